#include "gsmodel/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace gsm {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

[[noreturn]] void bad(std::string_view text)
{
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) {
        body.remove_prefix(1);
    }
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) {
        body.remove_suffix(1);
    }
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            bad(text);
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) {
            throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        }
        result = Rational(mpz_class(std::string(num), 10), d);
    } else {
        auto dot = body.find('.');
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
        if (whole.empty() && frac.empty()) {
            bad(text);
        }
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
            bad(text);
        }
        if (dot != std::string_view::npos && frac.empty()) {
            bad(text);
        }
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class num(digits.empty() ? std::string("0") : digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        result = Rational(num, den);
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value)
{
    mpz_class den = value.get_den();
    unsigned twos = 0;
    unsigned fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
        den /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
        den /= 5;
        ++fives;
    }
    if (den != 1) {
        return value.get_num().get_str() + "/" + value.get_den().get_str();
    }
    unsigned places = std::max(twos, fives);
    if (places == 0) {
        return value.get_num().get_str();
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = value.get_num() * (scale / value.get_den());
    bool negative = scaled < 0;
    std::string digits = mpz_class(abs(scaled)).get_str();
    if (digits.size() <= places) {
        digits.insert(0, places + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - places, ".");
    return negative ? "-" + digits : digits;
}

std::string to_fixed(const Rational& value, int digits)
{
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scaled = abs(value) * scale;
    // round half away from zero
    mpz_class q = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
    std::string s = q.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    bool is_zero = q == 0;
    return value < 0 && !is_zero ? "-" + s : s;
}

} // namespace gsm
