#include "poisson_approx/decimal.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace poisson_approx {

namespace {

constexpr int kMaxExp10 = 18;

[[noreturn]] void bad(const std::string& msg) {
    throw std::invalid_argument("DecimalProb: " + msg);
}

std::int64_t pow10_i64(int e) {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) v *= 10;
    return v;
}

}  // namespace

DecimalProb DecimalProb::parse(std::string_view text) {
    if (text.empty()) bad("empty literal");
    std::size_t i = 0;
    if (text[i] == '+') ++i;
    std::int64_t mantissa = 0;
    int frac_digits = 0;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) bad("two decimal points");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            if (mantissa > (INT64_MAX - 9) / 10) bad("too many digits");
            mantissa = mantissa * 10 + (c - '0');
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            bad("unexpected character in decimal literal");
        }
    }
    int exponent = 0;
    if (i < text.size()) {  // exponent part
        ++i;
        bool neg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            neg = text[i] == '-';
            ++i;
        }
        if (i == text.size()) bad("empty exponent");
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9') bad("bad exponent digit");
            exponent = exponent * 10 + (c - '0');
            if (exponent > 1000) bad("exponent out of range");
        }
        if (neg) exponent = -exponent;
    }
    if (!seen_digit) bad("no digits");

    int exp10 = frac_digits - exponent;
    while (exp10 < 0 && mantissa != 0) {
        if (mantissa > INT64_MAX / 10) bad("value too large");
        mantissa *= 10;
        ++exp10;
    }
    while (exp10 > 0 && mantissa % 10 == 0 && mantissa != 0) {
        mantissa /= 10;
        --exp10;
    }
    if (exp10 > kMaxExp10)
        bad("more than 18 decimal places cannot be represented exactly");

    DecimalProb d;
    d.num_ = mantissa;
    d.den_ = pow10_i64(exp10 < 0 ? 0 : exp10);
    if (!(d.num_ > 0 && d.num_ < d.den_)) bad("value must lie in (0, 1)");
    d.value_ = static_cast<double>(d.num_) / static_cast<double>(d.den_);
    return d;
}

DecimalProb DecimalProb::from_double(double p) {
    if (!(p > 0.0 && p < 1.0)) bad("value must lie in (0, 1)");
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, p);
    return parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

std::string DecimalProb::text() const {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, value_);
    return std::string(buf, static_cast<std::size_t>(res.ptr - buf));
}

int DecimalProb::compare_m_np(std::int64_t m, std::int64_t n) const {
    __int128 lhs = static_cast<__int128>(m) * den_;
    __int128 rhs = static_cast<__int128>(n) * num_;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

bool DecimalProb::m_ge_np_plus_1(std::int64_t m, std::int64_t n) const {
    return compare_m_np(m - 1, n) >= 0;
}

bool DecimalProb::m_le_np_plus_1(std::int64_t m, std::int64_t n) const {
    return compare_m_np(m - 1, n) <= 0;
}

bool DecimalProb::m_le_np(std::int64_t m, std::int64_t n) const {
    return compare_m_np(m, n) <= 0;
}

bool DecimalProb::m_ge_np(std::int64_t m, std::int64_t n) const {
    return compare_m_np(m, n) >= 0;
}

std::int64_t DecimalProb::floor_np(std::int64_t n) const {
    __int128 q = static_cast<__int128>(n) * num_ / den_;
    return static_cast<std::int64_t>(q);
}

std::int64_t DecimalProb::ceil_np(std::int64_t n) const {
    __int128 t = static_cast<__int128>(n) * num_;
    __int128 q = (t + den_ - 1) / den_;
    return static_cast<std::int64_t>(q);
}

}  // namespace poisson_approx
