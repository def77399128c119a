#include "gwtqft/rational.hpp"

#include <cctype>
#include <climits>

#include "gwtqft/error.hpp"

namespace gwtqft {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NonInteger: return "NonInteger";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::SizeLimit: return "SizeLimit";
        case ErrorCode::DegenerateEffectiveMetric: return "DegenerateEffectiveMetric";
        case ErrorCode::NotOneDimensional: return "NotOneDimensional";
        case ErrorCode::ConventionMismatch: return "ConventionMismatch";
        case ErrorCode::Atypical: return "Atypical";
        case ErrorCode::UnsupportedObject: return "UnsupportedObject";
        case ErrorCode::NotGeneric: return "NotGeneric";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::HypothesisFailed: return "HypothesisFailed";
        case ErrorCode::NonGenericClass: return "NonGenericClass";
        case ErrorCode::InternalMismatch: return "InternalMismatch";
        case ErrorCode::ProfileMismatch: return "ProfileMismatch";
        case ErrorCode::NotScalar: return "NotScalar";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::PoleAtBeta: return "PoleAtBeta";
        case ErrorCode::NonIntegerGram: return "NonIntegerGram";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationFailure: return "ValidationFailure";
    }
    return "Unknown";
}

namespace {

bool parse_integer_part(std::string_view s, Integer& out) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    out = Integer(std::string(s.substr(i)), 10);
    if (neg) out = -out;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    Integer num, den(1);
    if (slash == std::string_view::npos) {
        if (!parse_integer_part(text, num))
            throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
    } else {
        const auto ds = text.substr(slash + 1);
        if (!parse_integer_part(text.substr(0, slash), num) || ds.empty() || ds[0] == '-' || ds[0] == '+' ||
            !parse_integer_part(ds, den))
            throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
        if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const RationalVector& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) { return r - Rational(floor_of(r)); }

long to_long(const Rational& r) {
    if (!is_integer(r)) throw Error(ErrorCode::NonInteger, "expected an integer, got " + r.get_str());
    if (!r.get_num().fits_slong_p()) throw Error(ErrorCode::SizeLimit, "integer out of range: " + r.get_str());
    return r.get_num().get_si();
}

}  // namespace gwtqft
