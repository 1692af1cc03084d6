#pragma once

#include <functional>
#include <string>

namespace nlt {

using WarningHandler = std::function<void(const std::string&)>;

/// Installs a handler for library warnings and returns the previous one.
/// The default handler writes "warning: <message>" to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& message);

}  // namespace nlt
