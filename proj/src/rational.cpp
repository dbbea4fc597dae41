#include "crowdmine/rational.hpp"

#include <cstdlib>

namespace crowdmine {

void Rational::normalize() {
    if (den_ == 0)
        throw Error("rational with zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0)
        den_ = 1;
}

Rational Rational::parse(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(std::stoll(text), 1);
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw Error("cannot parse rational: \"" + text + "\"");
    }
}

} // namespace crowdmine
