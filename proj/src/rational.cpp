#include "tclt/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tclt {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    bool invert = exp < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-(exp + 1)) + 1ul
                             : static_cast<unsigned long>(exp);
    if (invert && base == 0) throw std::domain_error("rational_pow: 0 to negative power");
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    if (invert) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    // base was canonical, so num^e / den^e already is; sign lives in num.
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    if (k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer catalan_number(unsigned long n) {
    return binomial(2 * n, n) / Integer(static_cast<unsigned long>(n + 1));
}

Integer double_factorial_odd(unsigned long k) {
    Integer r(1);
    for (unsigned long j = 2; j <= k; ++j) r *= 2 * j - 1;
    return r;
}

Integer falling_factorial(long long n, unsigned long k) {
    Integer r(1);
    for (unsigned long j = 0; j < k; ++j) r *= Integer(static_cast<long>(n) - static_cast<long>(j));
    return r;
}

std::string format_rational(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

bool is_plain_integer(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// GMP's string constructor auto-detects the base, so "025" would be octal;
// force base 10 (and drop the leading '+' it does not accept).
Integer integer_base10(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("rational: empty string");

    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!is_plain_integer(num) || !is_plain_integer(den))
            throw std::invalid_argument("rational: bad fraction '" + std::string(text) + "'");
        Integer n = integer_base10(num);
        Integer d = integer_base10(den);
        if (d == 0) throw std::invalid_argument("rational: zero denominator in '" + std::string(text) + "'");
        Rational r(n, d);
        r.canonicalize();
        return r;
    }

    auto dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string_view head = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (head.empty() || head == "+" || head == "-") {
            // allow ".5" / "-.5"
        } else if (!is_plain_integer(head)) {
            throw std::invalid_argument("rational: bad decimal '" + std::string(text) + "'");
        }
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("rational: bad decimal '" + std::string(text) + "'");
        bool neg = !head.empty() && head[0] == '-';
        std::string digits;
        for (char c : head)
            if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
        digits += std::string(frac);
        if (digits.empty()) throw std::invalid_argument("rational: bad decimal '" + std::string(text) + "'");
        Integer n = integer_base10(digits);
        if (neg) n = -n;
        Integer d(1);
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        Rational r(n, d);
        r.canonicalize();
        return r;
    }

    if (!is_plain_integer(text))
        throw std::invalid_argument("rational: bad value '" + std::string(text) + "'");
    return Rational(integer_base10(text));
}

double to_double(const Rational& x) { return x.get_d(); }

} // namespace tclt
