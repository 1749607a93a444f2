#include "coronawalk/cli.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace coronawalk::cli {

void RunConfig::validate() const {
  auto check = [](double tol, const char* name) {
    if (!(tol > 0 && tol <= 1e-2))
      throw std::invalid_argument(std::string(name) + " must lie in (0, 1e-2]");
  };
  check(group_tol, "group tolerance");
  check(support_tol, "support tolerance");
  check(cospectral_tol, "cospectral tolerance");
  if (ell_max < 1) throw std::invalid_argument("lmax must be at least 1");
  if (!(target > 0 && target <= 1)) throw std::invalid_argument("target must lie in (0, 1]");
}

namespace {

void override_from_env(const char* name, double& slot) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || raw[used] != '\0')
    throw std::invalid_argument(std::string(name) + " is not a number: '" + raw + "'");
  slot = value;
}

}  // namespace

RunConfig config_from_environment() {
  RunConfig cfg;
  override_from_env("CORONAWALK_GROUP_TOL", cfg.group_tol);
  override_from_env("CORONAWALK_SUPPORT_TOL", cfg.support_tol);
  override_from_env("CORONAWALK_COSPECTRAL_TOL", cfg.cospectral_tol);
  return cfg;
}

}  // namespace coronawalk::cli
