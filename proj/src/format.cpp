#include "wigbound/format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <locale>
#include <sstream>

#include "wigbound/error.hpp"

namespace wigbound {

std::string fmt9(double value) {
    if (value == 0.0) return "0"; // avoid "-0"
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(9);
    os << value;
    return os.str();
}

double round9(double value) { return parse_double(fmt9(value)); }

double parse_double(std::string_view text) {
    const std::string s = trim(text);
    if (s == "inf" || s == "+inf" || s == "Infinity") return INFINITY;
    if (s == "-inf" || s == "-Infinity") return -INFINITY;
    double value = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (s.empty() || ec != std::errc() || ptr != last) throw Error("not a number: '" + s + "'");
    return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            return out;
        }
        out.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string trim(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

} // namespace wigbound
