#include "gwco/complex_text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "gwco/errors.hpp"

namespace gwco {
namespace {

std::string trim(const std::string& s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double_token(std::string tok, const std::string& whole) {
    if (!tok.empty() && tok.front() == '+') tok.erase(tok.begin());
    double out = 0.0;
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), last, out);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out))
        throw ConfigError("bad numeric token '" + tok + "' in complex literal '" + whole + "'");
    return out;
}

} // namespace

cplx parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw ConfigError("empty complex literal");
    if (s.rfind("exp:", 0) == 0) {
        return std::polar(1.0, parse_double_token(s.substr(4), s));
    }
    const bool has_imag = s.back() == 'i' || s.back() == 'I';
    const std::string body = has_imag ? s.substr(0, s.size() - 1) : s;
    // The last sign that is neither leading nor an exponent sign splits the parts.
    size_t split = std::string::npos;
    for (size_t k = 1; k < body.size(); ++k) {
        const char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') split = k;
    }
    if (!has_imag) {
        if (split != std::string::npos)
            throw ConfigError("complex literal '" + s + "' needs a trailing 'i' on its imaginary part");
        return {parse_double_token(body, s), 0.0};
    }
    if (split == std::string::npos) {
        if (body.empty() || body == "+") return {0.0, 1.0};
        if (body == "-") return {0.0, -1.0};
        return {0.0, parse_double_token(body, s)};
    }
    const double re = parse_double_token(body.substr(0, split), s);
    const std::string imag_tok = body.substr(split);
    if (imag_tok == "+") return {re, 1.0};
    if (imag_tok == "-") return {re, -1.0};
    return {re, parse_double_token(imag_tok, s)};
}

std::string format_double(double x) {
    if (x == 0.0) x = 0.0; // collapse -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return {buf, ptr};
}

std::string format_complex(cplx z) {
    const double re = z.real();
    const double im = z.imag();
    if (im == 0.0) return format_double(re);
    if (re == 0.0) return format_double(im) + "i";
    std::string out = format_double(re);
    if (!std::signbit(im)) out += '+';
    out += format_double(im);
    out += 'i';
    return out;
}

} // namespace gwco
