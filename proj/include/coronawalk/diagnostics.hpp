#pragma once

#include <functional>
#include <string_view>

namespace coronawalk::diag {

using Sink = std::function<void(std::string_view)>;

// Warnings are soft failures (e.g. a hypothesis like connectivity is not
// met). The default sink writes to std::clog.
void warn(std::string_view message);

// Returns the previous sink.
Sink set_sink(Sink sink);

}  // namespace coronawalk::diag
