#include "galstat/poly.hpp"

#include <algorithm>

#include "poly_kernel.hpp"

namespace galstat {

using detail::Coeffs;

namespace {

void require_nonzero(const Poly& f, const char* what) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, what);
}

Coeffs to_coeffs(const Poly& f) { return Coeffs(f.coeffs().begin(), f.coeffs().end()); }

}  // namespace

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "polynomial needs a field");
}

Poly::Poly(FieldPtr field, std::vector<FieldElem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw Error(ErrorCode::InvalidArgument, "polynomial needs a field");
    for (const FieldElem c : coeffs_)
        if (!field_->contains(c)) throw Error(ErrorCode::FieldMismatch, "coefficient is not an element of the field");
    detail::trim(coeffs_);
}

Poly Poly::from_ints(FieldPtr field, std::span<const std::int64_t> coeffs) {
    std::vector<FieldElem> c;
    c.reserve(coeffs.size());
    for (const std::int64_t v : coeffs) c.push_back(field->from_int(v));
    return Poly(std::move(field), std::move(c));
}

Poly Poly::constant(FieldPtr field, FieldElem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, FieldElem c, std::size_t degree) {
    std::vector<FieldElem> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(field), std::move(v));
}

Poly Poly::x(FieldPtr field) {
    const FieldElem one = field->one();
    return monomial(std::move(field), one, 1);
}

FieldElem Poly::eval(FieldElem at) const noexcept {
    FieldElem acc = field_->zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_->add(field_->mul(acc, at), *it);
    return acc;
}

Poly Poly::monic() const {
    require_nonzero(*this, "monic() of the zero polynomial");
    return Poly(field_, detail::make_monic(*field_, coeffs_));
}

Poly Poly::scaled(FieldElem c) const { return Poly(field_, detail::scale(*field_, coeffs_, c)); }

Poly Poly::operator+(const Poly& o) const {
    require_same_field(field_, o.field_);
    return Poly(field_, detail::add(*field_, coeffs_, o.coeffs_));
}

Poly Poly::operator-(const Poly& o) const {
    require_same_field(field_, o.field_);
    return Poly(field_, detail::sub(*field_, coeffs_, o.coeffs_));
}

Poly Poly::operator*(const Poly& o) const {
    require_same_field(field_, o.field_);
    return Poly(field_, detail::mul(*field_, coeffs_, o.coeffs_));
}

Poly Poly::operator-() const { return Poly(field_, detail::sub(*field_, {}, coeffs_)); }

std::string Poly::str(char var) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const FieldElem c = coeffs_[static_cast<std::size_t>(i)];
        if (c.code == 0) continue;
        if (!out.empty()) out += " + ";
        const bool unit = c == field_->one();
        if (!unit || i == 0) out += field_->format(c);
        if (i > 0) {
            if (!unit) out += '*';
            out += var;
            if (i > 1) out += '^' + std::to_string(i);
        }
    }
    return out;
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    require_same_field(f.field_ptr(), g.field_ptr());
    if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
    Coeffs q, r;
    detail::divrem(f.field(), to_coeffs(f), to_coeffs(g), q, r);
    return {Poly(f.field_ptr(), std::move(q)), Poly(f.field_ptr(), std::move(r))};
}

Poly gcd(const Poly& f, const Poly& g) {
    require_same_field(f.field_ptr(), g.field_ptr());
    if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "gcd(0, 0) is undefined");
    return Poly(f.field_ptr(), detail::gcd(f.field(), to_coeffs(f), to_coeffs(g)));
}

Poly derivative(const Poly& f) { return Poly(f.field_ptr(), detail::derivative(f.field(), to_coeffs(f))); }

Poly compose(const Poly& f, const Poly& g) {
    require_same_field(f.field_ptr(), g.field_ptr());
    const FiniteField& F = f.field();
    const Coeffs gc = to_coeffs(g);
    Coeffs acc;
    for (int i = f.degree(); i >= 0; --i) {
        acc = detail::mul(F, acc, gc);
        const FieldElem c = f[static_cast<std::size_t>(i)];
        if (acc.empty()) acc.push_back(FieldElem{});
        acc[0] = F.add(acc[0], c);
        detail::trim(acc);
    }
    return Poly(f.field_ptr(), std::move(acc));
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
    require_same_field(base.field_ptr(), m.field_ptr());
    if (m.is_zero()) throw Error(ErrorCode::DivisionByZero, "modulus is the zero polynomial");
    const FiniteField& F = base.field();
    if (m.degree() == 0) return Poly(base.field_ptr());
    const Coeffs mm = detail::make_monic(F, to_coeffs(m));
    return Poly(base.field_ptr(), detail::powmod(F, to_coeffs(base), e, mm));
}

FieldElem resultant(const Poly& f, const Poly& g) {
    require_same_field(f.field_ptr(), g.field_ptr());
    if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resultant with the zero polynomial");
    const FiniteField& F = f.field();
    Coeffs a = to_coeffs(f);
    Coeffs b = to_coeffs(g);
    FieldElem res = F.one();
    // Res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r), r = a mod b.
    while (detail::deg(b) > 0) {
        Coeffs q, r;
        detail::divrem(F, a, b, q, r);
        if (r.empty()) return F.zero();
        const int da = detail::deg(a), db = detail::deg(b), dr = detail::deg(r);
        res = F.mul(res, F.pow(b.back(), static_cast<std::uint64_t>(da - dr)));
        if ((da & 1) && (db & 1)) res = F.neg(res);
        a = std::move(b);
        b = std::move(r);
    }
    return F.mul(res, F.pow(b.back(), static_cast<std::uint64_t>(detail::deg(a))));
}

Discriminant discriminant(const Poly& f) {
    require_nonzero(f, "discriminant of the zero polynomial");
    if (f.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, "discriminant needs degree >= 1");
    const FiniteField& F = f.field();
    const Poly fp = derivative(f);
    if (fp.is_zero()) return {F.zero(), true};
    const int r = f.degree();
    const int e = fp.degree();
    FieldElem value = resultant(f, fp);
    // Sylvester determinant at formal degree r - 1 picks up lc(f)^{r-1-e}.
    value = F.mul(value, F.pow(f.lead(), static_cast<std::uint64_t>(r - 1 - e)));
    value = F.div(value, f.lead());
    if (((static_cast<long>(r) * (r - 1)) / 2) & 1) value = F.neg(value);
    return {value, false};
}

bool is_squarefree(const Poly& f) {
    if (f.degree() < 1) return !f.is_zero();
    const FiniteField& F = f.field();
    const Coeffs c = to_coeffs(f);
    const Coeffs d = detail::derivative(F, c);
    if (d.empty()) return false;
    return detail::deg(detail::gcd(F, c, d)) == 0;
}

MorseReport is_morse(const Poly& f) {
    require_nonzero(f, "is_morse of the zero polynomial");
    if (f.degree() < 2) throw Error(ErrorCode::InvalidArgument, "is_morse needs degree >= 2");
    const FiniteField& F = f.field();
    MorseReport rep;
    rep.characteristic_too_small = F.p() <= static_cast<std::uint64_t>(f.degree());

    const Poly f1 = derivative(f);
    if (f1.is_zero()) {
        rep.degenerate_detail = "derivative vanishes identically";
        return rep;
    }
    const Poly f2 = derivative(f1);
    rep.derivative_squarefree = gcd(f1, f2).degree() == 0;

    const int e = f1.degree();
    if (e == 0) {
        rep.critical_values_distinct = true;
    } else {
        if (F.q() < static_cast<std::uint64_t>(e) + 1)
            throw Error(ErrorCode::UnsupportedSize, "field too small to interpolate the critical-value polynomial");
        // Sample D(s) at s = element(0..e), then Lagrange-interpolate.
        const std::size_t npts = static_cast<std::size_t>(e) + 1;
        std::vector<FieldElem> xs(npts), ys(npts);
        Coeffs shifted = to_coeffs(f);
        const FieldElem c0 = f[0];
        for (std::size_t i = 0; i < npts; ++i) {
            xs[i] = F.element(i);
            shifted[0] = F.sub(c0, xs[i]);
            ys[i] = resultant(Poly(f.field_ptr(), shifted), f1);
        }
        Coeffs master{F.one()};
        for (const FieldElem xi : xs) master = detail::mul(F, master, Coeffs{F.neg(xi), F.one()});
        Coeffs interp(npts);
        for (std::size_t i = 0; i < npts; ++i) {
            if (ys[i].code == 0) continue;
            const Coeffs basis = detail::exact_div(F, master, Coeffs{F.neg(xs[i]), F.one()});
            FieldElem denom = F.one();
            for (std::size_t j = 0; j < npts; ++j)
                if (j != i) denom = F.mul(denom, F.sub(xs[i], xs[j]));
            const FieldElem w = F.div(ys[i], denom);
            for (std::size_t k = 0; k < basis.size(); ++k) interp[k] = F.add(interp[k], F.mul(w, basis[k]));
        }
        detail::trim(interp);
        const Poly D(f.field_ptr(), std::move(interp));
        rep.critical_values_distinct = D.degree() >= 1 ? is_squarefree(D) : !D.is_zero();
    }
    rep.is_morse = rep.derivative_squarefree && rep.critical_values_distinct;
    if (!rep.derivative_squarefree)
        rep.degenerate_detail = "derivative has a repeated root";
    else if (!rep.critical_values_distinct)
        rep.degenerate_detail = "two critical points share a critical value";
    return rep;
}

}  // namespace galstat
