#include "coronawalk/cli.hpp"

#include "coronawalk/corona.hpp"
#include "coronawalk/graph_spec.hpp"
#include "coronawalk/spectral.hpp"
#include "coronawalk/transfer.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace coronawalk::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string spec;
  Vertex u = 0;
  Vertex v = 0;
  std::optional<Vertex> w;
  double t = 0;
  double t_max = 50;
  std::size_t steps = 10000;
  std::string family;
  bool closed_form = false;
  std::string format = "auto";
};

struct Parsed {
  GraphSpec spec;
  Graph graph;
};

Parsed load(const std::string& text) {
  GraphSpec spec;
  try {
    spec = parse_graph_spec(text);
  } catch (const SpecParseError& e) {
    throw UsageError(std::string("invalid graph spec: ") + e.what());
  }
  return {spec, build_family(spec)};
}

CoronaSpec corona_of(const GraphSpec& spec) {
  if (spec.kind != Family::corona) throw UsageError("this command needs a corona(G,H) graph spec");
  return make_corona_spec(build_family(spec.factors[0]), build_family(spec.factors[1]));
}

Tolerances tolerances(const RunConfig& cfg) { return {cfg.group_tol, cfg.support_tol, cfg.cospectral_tol}; }

Json class_json(const EigenClass& c) {
  return Json{{"value", real(c.value)}, {"multiplicity", c.multiplicity}, {"exact", exact_value(c.exact)}};
}

const char* periodic_name(Periodic p) {
  switch (p) {
    case Periodic::yes: return "yes";
    case Periodic::no: return "no";
    case Periodic::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* case_name(PeriodicityCase c) {
  switch (c) {
    case PeriodicityCase::all_integer: return "all-integer";
    case PeriodicityCase::quadratic: return "quadratic";
    case PeriodicityCase::none: return "none";
  }
  return "?";
}

Json periodicity_json(const PeriodicityVerdict& p) {
  Json j{{"periodic", periodic_name(p.periodic)}, {"case", case_name(p.kind)}};
  if (p.kind == PeriodicityCase::quadratic) {
    j["a"] = p.a;
    j["delta"] = p.delta;
  }
  j["witness_period"] = p.witness_period ? real(*p.witness_period) : Json(nullptr);
  if (p.confirmed_fidelity) j["confirmed_fidelity"] = real(*p.confirmed_fidelity);
  return j;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pst: return "PST";
    case Verdict::no_pst: return "NoPST";
    case Verdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

Json failure_json(FailureReason f) {
  switch (f) {
    case FailureReason::none: return nullptr;
    case FailureReason::not_strongly_cospectral: return "not_strongly_cospectral";
    case FailureReason::support_not_quadratic: return "support_not_quadratic";
    case FailureReason::sign_pattern_fails: return "sign_pattern_fails";
    case FailureReason::inexact_spectrum: return "inexact_spectrum";
  }
  return nullptr;
}

PgstFamily family_of(const std::string& name) {
  if (name == "t51" || name == "theorem51") return PgstFamily::theorem51;
  if (name == "t52" || name == "theorem52") return PgstFamily::theorem52;
  if (name == "cocktail") return PgstFamily::cocktail;
  throw UsageError("unknown PGST family '" + name + "' (expected t51, t52 or cocktail)");
}

const char* family_name(PgstFamily f) {
  switch (f) {
    case PgstFamily::theorem51: return "t51";
    case PgstFamily::theorem52: return "t52";
    case PgstFamily::cocktail: return "cocktail";
  }
  return "?";
}

struct Output {
  Json report;
  std::optional<std::string> text;  // preformatted body for text/csv
};

Output cmd_spectrum(const Args& a, const RunConfig& cfg, Format fmt) {
  const auto parsed = load(a.spec);
  const auto tols = tolerances(cfg);
  SpectralDecomposition d;
  if (a.closed_form) {
    const auto cs = corona_of(parsed.spec);
    d = corona_spectral_closed_form(cs, analyze_graph(cs.G, tols), analyze_graph(cs.H, tols), cfg.group_tol);
  } else {
    d = decompose(adjacency<double>(parsed.graph), cfg.group_tol);
    label_exact(d, adjacency<std::int64_t>(parsed.graph));
  }
  Json classes = Json::array();
  for (const auto& c : d.classes) classes.push_back(class_json(c));
  Output o{Json{{"command", "spectrum"},
                {"graph", parsed.spec.to_string()},
                {"order", parsed.graph.order()},
                {"method", a.closed_form ? "closed-form" : "numeric"},
                {"classes", classes}},
           std::nullopt};
  if (fmt == Format::csv) {
    std::string body = "value,multiplicity,exact\n";
    for (const auto& c : d.classes)
      body += real(c.value).dump() + "," + std::to_string(c.multiplicity) + "," +
              (c.exact ? c.exact->to_string() : std::string()) + "\n";
    o.text = body;
  }
  return o;
}

Output cmd_corona_build(const Args& a, Format fmt) {
  const auto parsed = load(a.spec);
  Json edges = Json::array();
  for (const auto& [x, y] : parsed.graph.edges()) edges.push_back(Json::array({x, y}));
  Output o{Json{{"command", "corona-build"},
                {"graph", parsed.spec.to_string()},
                {"order", parsed.graph.order()},
                {"edges", edges}},
           std::nullopt};
  if (fmt == Format::text || fmt == Format::automatic) o.text = format_edge_list(parsed.graph);
  return o;
}

Output cmd_fidelity(const Args& a, const RunConfig& cfg) {
  const auto parsed = load(a.spec);
  const auto d = decompose(adjacency<double>(parsed.graph), cfg.group_tol);
  const auto z = transition_entry(d, a.u, a.v, a.t);
  return {Json{{"command", "fidelity"},
               {"graph", parsed.spec.to_string()},
               {"u", a.u},
               {"v", a.v},
               {"t", real(a.t)},
               {"entry", complex_value(z)},
               {"fidelity", real(std::abs(z))}},
          std::nullopt};
}

Output cmd_sweep(const Args& a, const RunConfig& cfg, Format fmt) {
  const auto parsed = load(a.spec);
  const auto d = decompose(adjacency<double>(parsed.graph), cfg.group_tol);
  const auto trace = fidelity_sweep(d, a.u, a.v, a.t_max, a.steps);
  Json times = Json::array(), values = Json::array();
  for (std::size_t j = 0; j < trace.times.size(); ++j) {
    times.push_back(real(trace.times[j]));
    values.push_back(real(trace.values[j]));
  }
  Output o{Json{{"command", "sweep"},
                {"graph", parsed.spec.to_string()},
                {"u", a.u},
                {"v", a.v},
                {"t_max", real(a.t_max)},
                {"steps", a.steps},
                {"argmax", {{"t", real(trace.times[trace.argmax])}, {"fidelity", real(trace.values[trace.argmax])}}},
                {"t", times},
                {"fidelity", values}},
           std::nullopt};
  if (fmt == Format::csv || fmt == Format::automatic) {
    std::string body = "t,fidelity\n";
    for (std::size_t j = 0; j < trace.times.size(); ++j)
      body += real(trace.times[j]).dump() + "," + real(trace.values[j]).dump() + "\n";
    o.text = body;
  }
  return o;
}

Output cmd_support(const Args& a, const RunConfig& cfg, Format fmt) {
  const auto parsed = load(a.spec);
  const auto d = analyze_graph(parsed.graph, tolerances(cfg));
  const auto s = eigenvalue_support(d, a.u, cfg.support_tol);
  Json list = Json::array();
  std::string body = "value,exact\n";
  for (auto r : s.classes) {
    list.push_back(Json{{"value", real(d.classes[r].value)}, {"exact", exact_value(d.classes[r].exact)}});
    body += real(d.classes[r].value).dump() + "," +
            (d.classes[r].exact ? d.classes[r].exact->to_string() : std::string()) + "\n";
  }
  Output o{Json{{"command", "support"}, {"graph", parsed.spec.to_string()}, {"u", a.u}, {"support", list}},
           std::nullopt};
  if (fmt == Format::csv) o.text = body;
  return o;
}

Output cmd_cospectral(const Args& a, const RunConfig& cfg) {
  const auto parsed = load(a.spec);
  const auto d = analyze_graph(parsed.graph, tolerances(cfg));
  const auto signs = strong_cospectral(d, a.u, a.v, cfg.cospectral_tol);
  Json j{{"command", "cospectral"},
         {"graph", parsed.spec.to_string()},
         {"u", a.u},
         {"v", a.v},
         {"strongly_cospectral", signs.has_value()}};
  Json list = nullptr;
  if (signs) {
    list = Json::array();
    for (const auto& cs : *signs)
      list.push_back(Json{{"value", real(d.classes[cs.class_index].value)},
                          {"exact", exact_value(d.classes[cs.class_index].exact)},
                          {"sign", cs.sign}});
  }
  j["signs"] = list;
  return {j, std::nullopt};
}

Output cmd_periodic(const Args& a, const RunConfig& cfg) {
  const auto parsed = load(a.spec);
  const auto tols = tolerances(cfg);
  const auto d = analyze_graph(parsed.graph, tols);
  Json j{{"command", "periodic"},
         {"graph", parsed.spec.to_string()},
         {"u", a.u},
         {"vertex", periodicity_json(vertex_periodicity(d, a.u, tols))}};
  if (parsed.spec.kind == Family::corona) {
    const auto cs = corona_of(parsed.spec);
    if (cs.k && a.u < cs.n() && cs.n() >= 2) {
      const auto base = corona_base_periodicity(cs.G, cs.H, a.u, tols);
      const auto& c = base.conditions;
      j["corona_base"] = Json{{"k_is_zero", c.k_is_zero},
                              {"one_plus_4m_odd_square", c.one_plus_4m_odd_square},
                              {"support_condition", c.support_condition ? Json(*c.support_condition) : Json(nullptr)},
                              {"verdict", periodicity_json(base.verdict)}};
    }
  }
  return {j, std::nullopt};
}

Output cmd_pst(const Args& a, const RunConfig& cfg) {
  const auto parsed = load(a.spec);
  const auto tols = tolerances(cfg);
  const auto d = analyze_graph(parsed.graph, tols);
  const auto cert = pst_certify(d, a.u, a.v, tols);
  Json j{{"command", "pst"},
         {"graph", parsed.spec.to_string()},
         {"u", a.u},
         {"v", a.v},
         {"verdict", verdict_name(cert.verdict)},
         {"failure", failure_json(cert.failure)}};
  Json support = Json::array();
  for (double x : cert.support_values) support.push_back(real(x));
  j["support"] = support;
  if (cert.verdict == Verdict::pst) {
    j["delta"] = cert.delta;
    j["a"] = cert.a;
    j["b_values"] = cert.b_values;
    j["g"] = cert.g;
    j["alpha"] = cert.alpha;
    j["tau"] = cert.tau_symbolic;
    j["tau_value"] = real(cert.tau);
    j["phase"] = complex_value(cert.phase);
    j["confirmed_fidelity"] = real(cert.confirmed_fidelity);
  }
  return {j, std::nullopt};
}

Output cmd_no_pst_scan(const Args& a, const RunConfig& cfg) {
  const auto parsed = load(a.spec);
  const auto cs = corona_of(parsed.spec);
  const auto gd = analyze_graph(cs.G, tolerances(cfg));
  CoronaPair pair;
  if (a.w) {
    pair.kind = CoronaPair::Kind::base_copy;
    pair.v2 = a.u;
    pair.v = a.v;
    pair.w = *a.w;
  } else {
    pair.v = a.u;
    pair.v2 = a.v;
  }
  const auto grid = uniform_grid(a.t_max, a.steps);
  const auto report = corona_no_pst_check(cs, gd, pair, grid);
  Json j{{"command", "no-pst-scan"},
         {"graph", parsed.spec.to_string()},
         {"pair", a.w ? "base-copy" : "base-base"},
         {"from", corona_index(cs.n(), a.u)},
         {"to", a.w ? corona_index(cs.n(), a.v, *a.w) : corona_index(cs.n(), a.v)},
         {"t_max", real(a.t_max)},
         {"samples", report.samples},
         {"max_fidelity", real(report.max_fidelity)},
         {"argmax_t", real(report.argmax_time)},
         {"all_below_one", report.all_below_one},
         {"static_bound", real(report.static_bound)}};
  return {j, std::nullopt};
}

Output cmd_pgst(const Args& a, const RunConfig& cfg) {
  const auto family = family_of(a.family);
  const auto parsed = load(a.spec);
  const auto cs = corona_of(parsed.spec);
  const auto tols = tolerances(cfg);
  const auto gd = analyze_graph(cs.G, tols);
  const auto r = pgst_search(cs, gd, a.u, a.v, family, cfg.ell_max, cfg.target, tols);
  Json trace = Json::array();
  for (const auto& s : r.trace) trace.push_back(Json{{"ell", s.ell}, {"fidelity", real(s.fidelity)}});
  Json j{{"command", "pgst"},
         {"graph", parsed.spec.to_string()},
         {"u", a.u},
         {"v", a.v},
         {"family", family_name(r.family)}};
  if (r.family == PgstFamily::theorem51) j["g"] = r.g;
  j["lmax"] = cfg.ell_max;
  j["target"] = real(cfg.target);
  j["best_ell"] = r.best_ell;
  j["best_time"] = real(r.best_time);
  j["best_fidelity"] = real(r.best_fidelity);
  j["reached_target"] = r.reached_target;
  j["evaluated"] = r.evaluated;
  j["trace"] = trace;
  return {j, std::nullopt};
}

Format parse_format(const std::string& f) {
  if (f == "auto") return Format::automatic;
  if (f == "json") return Format::json;
  if (f == "csv") return Format::csv;
  if (f == "text") return Format::text;
  throw UsageError("unknown format '" + f + "'");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = config_from_environment();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Continuous-time quantum walks on neighborhood coronas", "coronawalk"};
  app.require_subcommand(1);
  Args a;
  std::string output;
  app.add_option("--format", a.format, "json | csv | text | auto");
  app.add_option("--output,-o", output, "Write the report to this file");
  app.add_option("--group-tol", cfg.group_tol, "Eigenvalue grouping tolerance");
  app.add_option("--support-tol", cfg.support_tol, "Eigenvalue support tolerance");
  app.add_option("--cospectral-tol", cfg.cospectral_tol, "Strong cospectrality tolerance");

  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("graph", a.spec, "Graph spec, e.g. 'corona(path:2,cycle:3)'")->required();
    return sub;
  };
  auto add_u = [&](CLI::App* s) { s->add_option("--u", a.u, "Vertex u")->required(); };
  auto add_uv = [&](CLI::App* s) {
    add_u(s);
    s->add_option("--v", a.v, "Vertex v")->required();
  };

  auto* spectrum = add("spectrum", "Eigenvalue classes with exact labels");
  spectrum->add_flag("--closed-form", a.closed_form, "Use the corona closed form (needs corona(G,H), H regular)");
  add("corona-build", "Emit the assembled graph as an edge list");
  auto* fid = add("fidelity", "|U(t)_{u,v}| at one time");
  add_uv(fid);
  fid->add_option("--t", a.t, "Time")->required();
  auto* sweep = add("sweep", "Fidelity on a uniform time grid");
  add_uv(sweep);
  sweep->add_option("--tmax", a.t_max, "Last grid time")->required();
  sweep->add_option("--steps", a.steps, "Number of grid points")->required();
  add_u(add("support", "Eigenvalue support of a vertex"));
  add_uv(add("cospectral", "Strong cospectrality sign map"));
  add_u(add("periodic", "Periodicity at a vertex"));
  add_uv(add("pst", "Certify or refute perfect state transfer"));
  auto* scan = add("no-pst-scan", "Sample base-vertex corona fidelities");
  add_uv(scan);
  scan->add_option("--w", a.w, "H vertex: scan (u,0)-(v,w) instead of (u,0)-(v,0)");
  scan->add_option("--tmax", a.t_max, "Last grid time (default 50)");
  scan->add_option("--steps", a.steps, "Number of grid points (default 10000)");
  auto* pgst = add("pgst", "Pretty good state transfer time search");
  add_uv(pgst);
  pgst->add_option("--family", a.family, "t51 | t52 | cocktail")->required();
  pgst->add_option("--lmax", cfg.ell_max, "Largest l to try");
  pgst->add_option("--target", cfg.target, "Stop once this fidelity is reached");

  std::vector<const char*> argv{"coronawalk"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Format fmt;
  try {
    cfg.validate();
    fmt = parse_format(a.format);
    if (!output.empty()) cfg.output_path = output;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const bool csv_ok = name == "sweep" || name == "spectrum" || name == "support";
  if (fmt == Format::csv && !csv_ok) {
    err << "error: csv output is only available for sweep, spectrum and support\n";
    return kExitUsage;
  }

  Output result;
  try {
    if (name == "spectrum") result = cmd_spectrum(a, cfg, fmt);
    else if (name == "corona-build") result = cmd_corona_build(a, fmt);
    else if (name == "fidelity") result = cmd_fidelity(a, cfg);
    else if (name == "sweep") result = cmd_sweep(a, cfg, fmt);
    else if (name == "support") result = cmd_support(a, cfg, fmt);
    else if (name == "cospectral") result = cmd_cospectral(a, cfg);
    else if (name == "periodic") result = cmd_periodic(a, cfg);
    else if (name == "pst") result = cmd_pst(a, cfg);
    else if (name == "no-pst-scan") result = cmd_no_pst_scan(a, cfg);
    else result = cmd_pgst(a, cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAnalysis;
  }

  std::string body;
  if (result.text && fmt != Format::json) body = *result.text;
  else if (fmt == Format::text) body = to_text(result.report);
  else body = result.report.dump(2) + "\n";

  if (cfg.output_path) {
    std::ofstream file(*cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << *cfg.output_path << "'\n";
      return kExitAnalysis;
    }
    file << body;
  } else {
    out << body;
  }
  return kExitOk;
}

}  // namespace coronawalk::cli
