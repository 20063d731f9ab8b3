#pragma once

#include <forge/dsl/interpreter.hpp>

#include <string>

namespace forge::dsl {

enum class Format { Text, Json };

/// Text is indented key: value lines; json is one compact object per report
/// with keys in sorted order.
std::string render(const Report& report, Format format);

/// Rounds to 12 significant digits so reports are stable across reruns.
double round_for_report(double value);

} // namespace forge::dsl
