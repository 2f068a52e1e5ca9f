#include "galstat/family.hpp"

#include <algorithm>

#include "galstat/error.hpp"

namespace galstat {

bool BivariatePoly::is_monic_in_x() const {
    return !coeffs_x.empty() && coeffs_x.back().degree() == 0 && coeffs_x.back().lead() == field->one();
}

Poly BivariatePoly::at_t(FieldElem t0) const {
    std::vector<FieldElem> c;
    c.reserve(coeffs_x.size());
    for (const Poly& cj : coeffs_x) c.push_back(cj.eval(t0));
    return Poly(field, std::move(c));
}

FamilySpec make_family(BivariatePoly F, GenericTemplate phi, std::string name) {
    if (!F.field) throw Error(ErrorCode::InvalidFamily, "family has no field");
    if (F.n() < 1) throw Error(ErrorCode::InvalidFamily, "F must have degree n >= 1 in x");
    if (F.coeffs_x.back().is_zero()) throw Error(ErrorCode::InvalidFamily, "leading x-coefficient of F is zero");
    if (phi.d < 1) throw Error(ErrorCode::InvalidFamily, "template degree d must be >= 1");
    if (phi.support.empty()) throw Error(ErrorCode::InvalidFamily, "template support is empty");
    for (std::size_t i = 0; i < phi.support.size(); ++i) {
        if (phi.support[i] < 0 || phi.support[i] >= phi.d)
            throw Error(ErrorCode::InvalidFamily, "support exponents must lie in [0, d)");
        if (i > 0 && phi.support[i] <= phi.support[i - 1])
            throw Error(ErrorCode::InvalidFamily, "support must be strictly increasing");
    }
    const int n = F.n();
    for (int j = 0; j <= n; ++j) {
        const Poly& c = F.coeffs_x[static_cast<std::size_t>(j)];
        require_same_field(F.field, c.field_ptr());
        if (j < n && c.degree() >= phi.d * (n - j))
            throw Error(ErrorCode::InvalidFamily, "coefficient of x^" + std::to_string(j) +
                                                      " has t-degree too large for deg_t = n*d");
    }
    if (F.coeffs_x.back().degree() != 0)
        throw Error(ErrorCode::InvalidFamily, "leading x-coefficient of F must be constant in t");
    return FamilySpec{std::move(F), std::move(phi), std::move(name)};
}

std::vector<std::string> hypothesis_warnings(const FamilySpec& spec) {
    std::vector<std::string> w;
    const int r = spec.r();
    if (spec.field()->p() <= static_cast<std::uint64_t>(r))
        w.push_back("characteristic " + std::to_string(spec.field()->p()) + " <= r = " + std::to_string(r));
    if (r <= 3) w.push_back("r = " + std::to_string(r) + " <= 3");
    if (spec.phi.support.front() != 0) w.push_back("constant term of the template is not free");
    if (spec.phi.d < 2) w.push_back("template degree d = " + std::to_string(spec.phi.d) + " < 2");
    return w;
}

namespace {

void check_tuple(const FamilySpec& spec, const SpecTuple& A) {
    if (static_cast<int>(A.values.size()) != spec.params())
        throw Error(ErrorCode::ArityMismatch, "tuple has " + std::to_string(A.values.size()) + " values, family has " +
                                                  std::to_string(spec.params()) + " parameters");
    require_same_field(spec.field(), A.field);
    for (const FieldElem v : A.values)
        if (!spec.field()->contains(v)) throw Error(ErrorCode::FieldMismatch, "tuple value outside the field");
}

}  // namespace

Poly specialize_template(const FamilySpec& spec, const SpecTuple& A) {
    check_tuple(spec, A);
    const FieldPtr& K = spec.field();
    std::vector<FieldElem> c(static_cast<std::size_t>(spec.phi.d) + 1);
    for (std::size_t i = 0; i < A.values.size(); ++i) c[static_cast<std::size_t>(spec.phi.support[i])] = A.values[i];
    c.back() = K->one();
    return Poly(K, std::move(c));
}

Poly specialize(const FamilySpec& spec, const SpecTuple& A) {
    const Poly phi = specialize_template(spec, A);
    if (!spec.F.is_monic_in_x()) throw Error(ErrorCode::NotMonicInX, "F is not monic in x");
    const auto& cx = spec.F.coeffs_x;
    Poly out = cx.back();
    for (std::size_t j = cx.size() - 1; j-- > 0;) out = out * phi + cx[j];
    if (out.degree() != spec.r() || !out.is_monic())
        throw Error(ErrorCode::InvalidFamily, "specialization is not monic of degree r");
    return out;
}

Poly iterate_specialize(const FamilySpec& spec, const SpecTuple& A, int k, int degree_cap) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "iterate depth must be >= 1");
    long long degree = 1;
    for (int i = 0; i < k; ++i) {
        degree *= spec.r();
        if (degree > degree_cap)
            throw Error(ErrorCode::DegreeCapExceeded, "iterate degree exceeds the cap of " + std::to_string(degree_cap));
    }
    const Poly g = specialize(spec, A);
    Poly out = g;
    for (int i = 1; i < k; ++i) out = compose(out, g);
    return out;
}

std::vector<FieldElem> roots(const Poly& f) {
    std::vector<FieldElem> out;
    for (const auto& [fac, mult] : factor(f).factors)
        if (fac.degree() == 1) out.push_back(fac.field().neg(fac[0]));
    std::sort(out.begin(), out.end());
    return out;
}

FieldEmbedding::FieldEmbedding(FieldPtr base, int degree)
    : base_(std::move(base)), target_(make_field(base_->p(), base_->nu() * degree)) {
    const FiniteField& E = *target_;
    FieldElem theta = E.one();
    if (base_->nu() > 1) {
        // The base modulus has prime-field coefficients, whose codes agree in E.
        std::vector<FieldElem> m;
        for (const auto c : base_->modulus()) m.push_back(FieldElem{c});
        const std::vector<FieldElem> rts = roots(Poly(target_, std::move(m)));
        if (rts.empty()) throw Error(ErrorCode::InvalidArgument, "base modulus has no root in the extension");
        theta = rts.front();
    }
    FieldElem power = E.one();
    for (int i = 0; i < base_->nu(); ++i) {
        basis_.push_back(power);
        power = E.mul(power, theta);
    }
}

FieldElem FieldEmbedding::operator()(FieldElem a) const {
    if (base_->nu() == 1) return a;
    const FiniteField& E = *target_;
    FieldElem out = E.zero();
    const auto coords = base_->coords(a);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i]) out = E.add(out, E.mul(FieldElem{coords[i]}, basis_[i]));
    return out;
}

Poly FieldEmbedding::operator()(const Poly& f) const {
    require_same_field(base_, f.field_ptr());
    std::vector<FieldElem> c;
    for (const FieldElem a : f.coeffs()) c.push_back((*this)(a));
    return Poly(target_, std::move(c));
}

bool capelli_irreducible(const Poly& f, const Poly& g) {
    require_same_field(f.field_ptr(), g.field_ptr());
    if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "g is zero");
    if (g.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, "g must have degree >= 1");
    if (!is_irreducible(f)) return false;
    const FiniteField& K = f.field();
    if (f.degree() == 1) {
        const FieldElem beta = K.neg(K.div(f[0], f[1]));
        return is_irreducible(g - Poly::constant(f.field_ptr(), beta));
    }
    const FieldEmbedding iota(f.field_ptr(), f.degree());
    const std::vector<FieldElem> rts = roots(iota(f));
    if (rts.empty()) throw Error(ErrorCode::InvalidArgument, "irreducible f failed to split in its extension");
    return is_irreducible(iota(g) - Poly::constant(iota.target(), rts.front()));
}

bool separability_check(const Poly& f) {
    if (f.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, "separability needs degree >= 1");
    return is_squarefree(f);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "VALID";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::NotSeparable: return "NOT_SEPARABLE";
    }
    return "?";
}

ValidationReport validate_family(const FamilySpec& spec) {
    if (!spec.F.is_monic_in_x()) throw Error(ErrorCode::NotMonicInX, "F is not monic in x");
    ValidationReport rep;
    rep.warnings = hypothesis_warnings(spec);
    const FiniteField& K = *spec.field();
    const int n = spec.F.n();

    bool derivative_vanishes = true;
    for (int j = 1; j <= n && derivative_vanishes; ++j)
        if (!(spec.F.coeffs_x[static_cast<std::size_t>(j)].scaled(K.from_int(j))).is_zero()) derivative_vanishes = false;
    if (derivative_vanishes) {
        rep.verdict = Verdict::NotSeparable;
        rep.warnings.push_back("F is inseparable in x: its x-derivative vanishes");
        return rep;
    }

    // disc_x F is a nonzero polynomial in t unless F is inseparable; look for a
    // point where it does not vanish.
    const std::uint64_t samples = std::min<std::uint64_t>(K.q(), 64);
    for (std::uint64_t i = 0; i < samples && !rep.separability_witness; ++i) {
        const FieldElem t0 = K.element(i);
        if (n == 1 || discriminant(spec.F.at_t(t0)).value.code != 0) rep.separability_witness = t0;
    }
    rep.separable = rep.separability_witness.has_value();
    if (!rep.separable) rep.warnings.push_back("disc_x F vanished at every sampled t");

    for (const FieldElem t0 : K.elements()) {
        const Poly s = spec.F.at_t(t0);
        if (s.degree() == n && is_irreducible(s)) {
            rep.witness_t0 = t0;
            break;
        }
    }
    if (!rep.witness_t0) rep.warnings.push_back("no t0 in the field gives an irreducible F(t0, x)");
    rep.verdict = rep.separable && rep.witness_t0 ? Verdict::Valid : Verdict::Inconclusive;
    return rep;
}

}  // namespace galstat
