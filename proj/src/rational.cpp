#include "mge/rational.hpp"

#include <stdexcept>

namespace mge {

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(boost::multiprecision::cpp_int(s));
        }
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

std::string rational_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double rational_to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_pow(const Rat& base, int exp) {
    Rat out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace mge
