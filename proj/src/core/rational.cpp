#include "qdskit/core/rational.hpp"

#include "qdskit/core/error.hpp"
#include "qdskit/core/gaussian.hpp"

#include <numeric>

namespace qdskit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByNonUnit: return "DivisionByNonUnit";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::EmptyWeights: return "EmptyWeights";
        case ErrorCode::FirstWeightNotOne: return "FirstWeightNotOne";
        case ErrorCode::PrimitiveHypothesisFails: return "PrimitiveHypothesisFails";
        case ErrorCode::SingularPairing: return "SingularPairing";
        case ErrorCode::NonResonanceViolated: return "NonResonanceViolated";
        case ErrorCode::TerminationBoundExceeded: return "TerminationBoundExceeded";
        case ErrorCode::PairingNotAdapted: return "PairingNotAdapted";
        case ErrorCode::NotFlat: return "NotFlat";
        case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
        case ErrorCode::VectorsDoNotSpan: return "VectorsDoNotSpan";
        case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
        case ErrorCode::DegeneratePairing: return "DegeneratePairing";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::RingMismatch: return "RingMismatch";
    }
    return "Unknown";
}

Rational::Rational(long num, long den) {
    if (den == 0) throw Error(ErrorCode::DivisionByNonUnit, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw Error(ErrorCode::ParseError, "not a rational: " + s);
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::DivisionByNonUnit, "division by zero rational");
    v_ /= o.v_;
    return *this;
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

Rational Rational::pow(long e) const {
    if (e < 0) return (Rational(1) / *this).pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

long lcm_long(long a, long b) { return std::lcm(a, b); }

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    Rational n = o.norm();
    if (n.is_zero()) throw Error(ErrorCode::DivisionByNonUnit, "division by zero gaussian");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string GaussianRational::str() const {
    if (im_.is_zero()) return re_.str();
    std::string imag = im_.is_one() ? "i" : (im_ == Rational(-1) ? "-i" : im_.str() + "i");
    if (re_.is_zero()) return imag;
    if (im_.sign() > 0) imag = "+" + imag;
    return "(" + re_.str() + imag + ")";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

}  // namespace qdskit
