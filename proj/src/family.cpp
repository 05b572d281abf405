#include "cantor/family.hpp"

#include <cmath>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

int FamilySpec::max_degree() const {
    int k = 0;
    for (int d : degrees) k = std::max(k, d);
    return k;
}

double FamilySpec::inv_degree_sum() const {
    double s = 0.0;
    for (int d : degrees) s += 1.0 / d;
    return s;
}

int FamilySpec::degree() const {
    int s = 0;
    for (int d : degrees) s += d;
    return s;
}

std::vector<std::string> validate(const FamilySpec& spec) {
    std::vector<std::string> bad;
    std::ostringstream os;
    if (spec.p != 0 && spec.p != 1) bad.push_back("p must be 0 or 1");
    if (spec.n() < 2) bad.push_back("need n >= 2 degrees");
    for (int d : spec.degrees)
        if (d < 2) {
            os.str("");
            os << "degree " << d << " < 2";
            bad.push_back(os.str());
        }
    if (spec.n() >= 2) {
        double xi = spec.inv_degree_sum();
        if (!(xi < 1.0)) {
            os.str("");
            os << "sum 1/d_i = " << xi << " not < 1";
            bad.push_back(os.str());
        }
    }
    if (static_cast<int>(spec.params.size()) != spec.n() - 1) {
        os.str("");
        os << "expected " << spec.n() - 1 << " params, got " << spec.params.size();
        bad.push_back(os.str());
        return bad;
    }
    for (std::size_t i = 0; i < spec.params.size(); ++i) {
        if (!(spec.params[i].log_mag < 0.0)) {
            os.str("");
            os << "|a_" << i + 1 << "| = exp(" << spec.params[i].log_mag << ") not < 1";
            bad.push_back(os.str());
        }
        if (i + 1 < spec.params.size() && !(spec.params[i].log_mag < spec.params[i + 1].log_mag)) {
            os.str("");
            os << "strict magnitude ordering violated: log|a_" << i + 1 << "| = " << spec.params[i].log_mag
               << " !< log|a_" << i + 2 << "| = " << spec.params[i + 1].log_mag;
            bad.push_back(os.str());
        }
    }
    return bad;
}

XComplex eval(const FamilySpec& spec, std::complex<double> z, EvalInfo* info) {
    const int n = spec.n();
    const int lead = spec.lead_exponent();
    if (z == std::complex<double>(0.0, 0.0)) {
        if (lead < 0) throw PoleError("eval: z = 0 is a pole (negative leading exponent)");
        return XComplex::zero();
    }
    XComplex zx(z);
    XComplex acc = xc_int_pow(zx, lead);
    for (int i = 1; i < n; ++i) {
        const int di = spec.big_d(i);
        XComplex ai = spec.params[i - 1].value();
        XComplex zD = xc_int_pow(zx, di);
        XComplex aD = xc_int_pow(ai, di);
        XComplex t = xc_sub(zD, aD);
        if (t.is_zero()) {
            if (spec.factor_sign(i) < 0) {
                throw PoleError("eval: z is a pole of ring factor " + std::to_string(i));
            }
            return XComplex::zero();
        }
        if (info && t.log_abs() < aD.log_abs() + std::log(1e-3) + std::log(static_cast<double>(di)))
            info->near_singularity = true;
        acc = spec.factor_sign(i) > 0 ? xc_mul(acc, t) : xc_div(acc, t);
    }
    return acc;
}

namespace {

// z^k for plain complex by binary exponentiation; k >= 0.
std::complex<double> cpow_uint(std::complex<double> z, unsigned k) {
    std::complex<double> acc(1.0, 0.0);
    while (k > 0) {
        if (k & 1U) acc *= z;
        z *= z;
        k >>= 1U;
    }
    return acc;
}

// Ratio rho = (z/a)^D or (a/z)^D, whichever magnitude is <= 1, plus which one
// it was.  Both choices give the same rho/(1-rho)^2, and T = z^D/(z^D - a^D)
// is 1/(1-rho) for rho = (a/z)^D and -rho/(1-rho) for rho = (z/a)^D.
struct FactorRatio {
    std::complex<double> rho;
    bool small_side;  // true when rho = (z/a)^D
};

FactorRatio factor_ratio(std::complex<double> z, const LogPolar& a, int d) {
    double la = a.log_mag;
    double lz = std::log(std::abs(z));
    FactorRatio r;
    if (lz <= la) {
        // (z/a)^D via log-polar to dodge underflow in the quotient
        double lr = static_cast<double>(d) * (lz - la);
        double ph = static_cast<double>(d) * (std::arg(z) - a.phase);
        r.rho = std::exp(lr) * std::complex<double>(std::cos(ph), std::sin(ph));
        r.small_side = true;
    } else {
        double lr = static_cast<double>(d) * (la - lz);
        double ph = static_cast<double>(d) * (a.phase - std::arg(z));
        r.rho = std::exp(lr) * std::complex<double>(std::cos(ph), std::sin(ph));
        r.small_side = false;
    }
    return r;
}

}  // namespace

std::complex<double> eval_log_deriv(const FamilySpec& spec, std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) throw PoleError("eval_log_deriv: z = 0");
    const int n = spec.n();
    std::complex<double> sum(FamilySpec::parity_sign(n) * spec.degrees.front(), 0.0);
    for (int i = 1; i < n; ++i) {
        const int di = spec.big_d(i);
        FactorRatio fr = factor_ratio(z, spec.params[i - 1], di);
        std::complex<double> one(1.0, 0.0);
        std::complex<double> denom = one - fr.rho;
        if (denom == std::complex<double>(0.0, 0.0))
            throw PoleError("eval_log_deriv: z on zero circle of factor " + std::to_string(i));
        std::complex<double> t = fr.small_side ? -fr.rho / denom : one / denom;
        sum += std::complex<double>(FamilySpec::parity_sign(n - i) * di, 0.0) * t;
    }
    return sum;
}

std::complex<double> eval_log_deriv_prime(const FamilySpec& spec, std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) throw PoleError("eval_log_deriv_prime: z = 0");
    const int n = spec.n();
    std::complex<double> sum(0.0, 0.0);
    for (int i = 1; i < n; ++i) {
        const int di = spec.big_d(i);
        FactorRatio fr = factor_ratio(z, spec.params[i - 1], di);
        std::complex<double> denom = std::complex<double>(1.0, 0.0) - fr.rho;
        if (denom == std::complex<double>(0.0, 0.0))
            throw PoleError("eval_log_deriv_prime: z on zero circle of factor " + std::to_string(i));
        // rho/(1-rho)^2 is invariant under rho -> 1/rho, so either side works.
        sum += std::complex<double>(FamilySpec::parity_sign(n - i) * di * di, 0.0) * fr.rho / (denom * denom);
    }
    return -sum / z;
}

std::complex<double> mcmullen_eval(const McMullenSpec& spec, std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) throw PoleError("mcmullen_eval: z = 0");
    return cpow_uint(z, static_cast<unsigned>(spec.k)) + spec.eta / cpow_uint(z, static_cast<unsigned>(spec.l));
}

BasinImages basin_combinatorics(int p, int n) {
    const bool odd = (n % 2) != 0;
    if (p == 1 && odd) return {BasinLabel::D0, BasinLabel::DInfinity};
    if (p == 1 && !odd) return {BasinLabel::DInfinity, BasinLabel::DInfinity};
    if (p == 0 && odd) return {BasinLabel::DInfinity, BasinLabel::D0};
    return {BasinLabel::D0, BasinLabel::D0};
}

McMullenSpec mcmullen_of(const FamilySpec& spec) {
    if (spec.n() != 2 || spec.p != 1) throw DomainError("mcmullen_of: needs n = 2, p = 1");
    const int D = spec.big_d(1);
    XComplex eta = -xc_int_pow(spec.params[0].value(), D);
    McMullenSpec m;
    m.k = spec.degrees[1];
    m.l = spec.degrees[0];
    m.eta = eta.to_complex();
    return m;
}

}  // namespace cantor
