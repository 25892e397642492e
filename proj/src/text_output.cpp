#include "lienard/text_output.hpp"

#include <charconv>
#include <cmath>

namespace lienard {

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

void write_csv_row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first)
            os << ',';
        os << format_double(v);
        first = false;
    }
    os << '\n';
}

} // namespace lienard
