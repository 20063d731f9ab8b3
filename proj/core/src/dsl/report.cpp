#include <forge/dsl/report.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace forge::dsl {

double round_for_report(double value)
{
    if (!std::isfinite(value)) return value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    const double r = std::strtod(buf, nullptr);
    return r == 0 ? 0.0 : r;
}

namespace {

bool is_scalar(const Report& v)
{
    return !v.is_object() && !(v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()));
}

std::string scalar_text(const Report& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out = "(";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
        return out + ")";
    }
    return v.dump();
}

void write(std::ostringstream& out, const Report& obj, int indent)
{
    for (const auto& [k, v] : obj.items()) {
        out << std::string(static_cast<std::size_t>(indent), ' ') << k << ":";
        if ((v.is_object() || v.is_array()) && v.empty()) {
            out << (v.is_object() ? " {}\n" : " ()\n");
        } else if (is_scalar(v)) {
            out << " " << scalar_text(v) << "\n";
        } else if (v.is_object()) {
            out << "\n";
            write(out, v, indent + 2);
        } else {
            out << "\n";
            for (const auto& item : v) out << std::string(static_cast<std::size_t>(indent + 2), ' ') << "- " << scalar_text(item) << "\n";
        }
    }
}

} // namespace

std::string render(const Report& report, Format format)
{
    if (format == Format::Json) return report.dump();

    std::ostringstream out;
    out << "> " << report.value("echo", "") << "\n";
    Report body = report;
    for (const char* k : {"echo", "command", "line", "status"}) body.erase(k);
    if (report.value("status", "") == "error") out << "  status: error\n";
    write(out, body, 2);
    std::string s = out.str();
    s.pop_back();
    return s;
}

} // namespace forge::dsl
