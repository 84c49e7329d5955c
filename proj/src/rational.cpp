#include "envlie/rational.hpp"

#include "envlie/error.hpp"

namespace envlie {

std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat rat_from_string(std::string_view s) {
    // strip surrounding whitespace
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) fail(errc::invalid_input, "empty rational literal");

    const auto slash = s.find('/');
    try {
        if (slash != std::string_view::npos) {
            if (s.find_first_of(".eE") != std::string_view::npos)
                fail(errc::invalid_input,
                     "rational literal mixes '/' with decimal notation: " + std::string(s));
            mpz_class num(std::string(s.substr(0, slash)), 10);
            mpz_class den(std::string(s.substr(slash + 1)), 10);
            if (den == 0) fail(errc::invalid_input, "zero denominator in literal: " + std::string(s));
            Rat q(num, den);
            q.canonicalize();
            return q;
        }
        // decimal with optional exponent, parsed exactly
        long exponent = 0;
        std::string body(s);
        if (const auto epos = body.find_first_of("eE"); epos != std::string::npos) {
            const std::string exp_str = body.substr(epos + 1);
            if (exp_str.empty()) fail(errc::invalid_input, "bad exponent in: " + std::string(s));
            size_t used = 0;
            exponent = std::stol(exp_str, &used);
            if (used != exp_str.size())
                fail(errc::invalid_input, "bad exponent in: " + std::string(s));
            body.erase(epos);
        }
        std::string head = body, tail;
        if (const auto dot = body.find('.'); dot != std::string::npos) {
            head = body.substr(0, dot);
            tail = body.substr(dot + 1);
        }
        bool neg = !head.empty() && head[0] == '-';
        if (neg || (!head.empty() && head[0] == '+')) head.erase(0, 1);
        if (head.empty()) head = "0";
        for (char c : head + tail)
            if (c < '0' || c > '9') fail(errc::invalid_input, "bad decimal literal: " + std::string(s));
        mpz_class digits(head + tail, 10);
        mpz_class num = digits, den = 1;
        const long shift = exponent - static_cast<long>(tail.size());
        for (long i = 0; i < shift; ++i) num *= 10;
        for (long i = 0; i < -shift; ++i) den *= 10;
        Rat q(num, den);
        q.canonicalize();
        return neg ? Rat(-q) : q;
    } catch (const std::invalid_argument&) {
        fail(errc::invalid_input, "bad rational literal: " + std::string(s));
    } catch (const std::out_of_range&) {
        fail(errc::invalid_input, "bad rational literal: " + std::string(s));
    }
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

std::optional<Rat> exact_sqrt(const Rat& x) {
    if (sgn(x) < 0) fail(errc::invalid_input, "exact_sqrt of negative value");
    if (sgn(x) == 0) return Rat(0);
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rat(rn, rd);
}

} // namespace envlie
