#include "gyrosim/format.hpp"

#include <array>
#include <charconv>

namespace gyrosim {

std::string format_sci(double value, int digits) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::scientific, digits);
    std::string s(buf.data(), res.ptr);

    const auto e = s.find('e');
    if (e == std::string::npos) {
        return s; // nan, inf
    }
    std::string mantissa = s.substr(0, e);
    std::string exponent = s.substr(e + 1);
    const bool negative = !exponent.empty() && exponent.front() == '-';
    if (!exponent.empty() && (exponent.front() == '+' || exponent.front() == '-')) {
        exponent.erase(0, 1);
    }
    const auto nz = exponent.find_first_not_of('0');
    exponent = nz == std::string::npos ? "0" : exponent.substr(nz);
    return mantissa + 'e' + (negative ? "-" : "") + exponent;
}

std::string format_sci_full(double value) { return format_sci(value, 16); }

} // namespace gyrosim
