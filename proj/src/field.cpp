#include "galstat/field.hpp"

#include <array>
#include <limits>

#include "galstat/poly.hpp"

namespace galstat {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case ErrorCode::UnsupportedSize: return "UnsupportedSize";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
        case ErrorCode::NotMonicInX: return "NotMonicInX";
        case ErrorCode::InvalidFamily: return "InvalidFamily";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
        case ErrorCode::ClosureTooLarge: return "ClosureTooLarge";
        case ErrorCode::DegreeMismatch: return "DegreeMismatch";
        case ErrorCode::SweepCapExceeded: return "SweepCapExceeded";
        case ErrorCode::IndexNotInSupport: return "IndexNotInSupport";
        case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorCode::UnknownFixture: return "UnknownFixture";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

constexpr int kMaxCoords = 64;
using CoordBuf = std::array<std::uint64_t, kMaxCoords>;

}  // namespace

FiniteField::FiniteField(std::uint64_t p, int nu, std::vector<std::uint64_t> modulus)
    : p_(p), nu_(nu), q_(1), modulus_(std::move(modulus)) {
    p_powers_.reserve(static_cast<std::size_t>(nu_) + 1);
    for (int i = 0; i < nu_; ++i) {
        p_powers_.push_back(q_);
        q_ *= p_;
    }
    p_powers_.push_back(q_);
    if (p_ == 2 && nu_ > 1) {
        // Low bits of the modulus: x^nu == sum of these.
        for (int i = 0; i < nu_; ++i)
            if (modulus_[static_cast<std::size_t>(i)] != 0) char2_reduction_ |= std::uint64_t{1} << i;
    }
    const std::uint64_t sq = (p_ - 1) * (p_ - 1);
    lazy_limit_ = sq == 0 ? std::numeric_limits<std::uint64_t>::max()
                          : (std::numeric_limits<std::uint64_t>::max() - p_) / sq;
}

FieldElem FiniteField::from_int(std::int64_t v) const noexcept {
    const auto sp = static_cast<std::int64_t>(p_);
    std::int64_t r = v % sp;
    if (r < 0) r += sp;
    return {static_cast<std::uint64_t>(r)};
}

FieldElem FiniteField::from_coords(std::span<const std::uint64_t> coords) const {
    if (coords.size() != static_cast<std::size_t>(nu_))
        throw Error(ErrorCode::InvalidArgument, "element needs exactly " + std::to_string(nu_) + " coordinates");
    std::uint64_t code = 0;
    for (int i = nu_ - 1; i >= 0; --i) {
        const std::uint64_t c = coords[static_cast<std::size_t>(i)];
        if (c >= p_) throw Error(ErrorCode::InvalidArgument, "coordinate out of range [0, p)");
        code = code * p_ + c;
    }
    return {code};
}

std::vector<std::uint64_t> FiniteField::coords(FieldElem a) const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(nu_));
    std::uint64_t v = a.code;
    for (auto& c : out) {
        c = v % p_;
        v /= p_;
    }
    return out;
}

FieldElem FiniteField::add_ext(FieldElem a, FieldElem b) const noexcept {
    std::uint64_t x = a.code, y = b.code, out = 0;
    for (int i = 0; i < nu_; ++i) {
        std::uint64_t s = x % p_ + y % p_;
        if (s >= p_) s -= p_;
        out += s * p_powers_[static_cast<std::size_t>(i)];
        x /= p_;
        y /= p_;
    }
    return {out};
}

FieldElem FiniteField::neg_ext(FieldElem a) const noexcept {
    std::uint64_t x = a.code, out = 0;
    for (int i = 0; i < nu_; ++i) {
        const std::uint64_t c = x % p_;
        if (c != 0) out += (p_ - c) * p_powers_[static_cast<std::size_t>(i)];
        x /= p_;
    }
    return {out};
}

FieldElem FiniteField::mul_ext(FieldElem a, FieldElem b) const noexcept {
    CoordBuf ca{}, cb{};
    std::array<std::uint64_t, 2 * kMaxCoords> prod{};
    std::uint64_t x = a.code, y = b.code;
    const auto n = static_cast<std::size_t>(nu_);
    for (std::size_t i = 0; i < n; ++i) {
        ca[i] = x % p_;
        cb[i] = y % p_;
        x /= p_;
        y /= p_;
    }
    // p^nu <= 2^40 with nu >= 2 keeps p < 2^20, so these sums stay far below 2^64.
    for (std::size_t i = 0; i < n; ++i) {
        if (ca[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) prod[i + j] += ca[i] * cb[j];
    }
    for (std::size_t i = 2 * n - 2; i >= n; --i) {
        const std::uint64_t c = prod[i] % p_;
        if (c != 0) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::uint64_t m = modulus_[j];
                if (m != 0) prod[i - n + j] += c * (p_ - m);
            }
        }
        prod[i] = 0;
    }
    std::uint64_t out = 0;
    for (std::size_t i = n; i-- > 0;) out = out * p_ + prod[i] % p_;
    return {out};
}

FieldElem FiniteField::mul_char2(FieldElem a, FieldElem b) const noexcept {
    const std::uint64_t top = std::uint64_t{1} << (nu_ - 1);
    const std::uint64_t mask = (top << 1) - 1;
    std::uint64_t x = a.code, y = b.code, out = 0;
    while (y != 0) {
        if (y & 1) out ^= x;
        y >>= 1;
        const bool carry = (x & top) != 0;
        x = (x << 1) & mask;
        if (carry) x ^= char2_reduction_;
    }
    return {out};
}

FieldElem FiniteField::pow(FieldElem a, std::uint64_t e) const noexcept {
    FieldElem result = one();
    FieldElem base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e != 0) base = mul(base, base);
    }
    return result;
}

FieldElem FiniteField::inv(FieldElem a) const {
    if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return pow(a, q_ - 2);
}

FieldElem FiniteField::frobenius(FieldElem a, std::uint64_t power) const noexcept {
    power %= static_cast<std::uint64_t>(nu_);
    for (std::uint64_t i = 0; i < power; ++i) a = pow(a, p_);
    return a;
}

std::string FiniteField::format(FieldElem a) const {
    if (nu_ == 1) return std::to_string(a.code);
    std::string s = "[";
    const auto c = coords(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s + "]";
}

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept {
    return a == b || (a && b && *a == *b);
}

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!same_field(a, b)) throw Error(ErrorCode::FieldMismatch, "operands belong to different fields");
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> find_irreducible_modulus(std::uint64_t p, int nu) {
    if (nu < 2) throw Error(ErrorCode::InvalidArgument, "modulus search needs degree >= 2");
    const FieldPtr prime = make_field(p, 1, std::numeric_limits<std::uint64_t>::max());
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(nu), 0);
    std::vector<FieldElem> coeffs(static_cast<std::size_t>(nu) + 1);
    coeffs.back() = prime->one();
    for (;;) {
        // A root at 0 rules out the candidate cheaply.
        if (digits[0] != 0) {
            for (std::size_t i = 0; i < digits.size(); ++i) coeffs[i] = FieldElem{digits[i]};
            if (is_irreducible(Poly(prime, coeffs))) {
                std::vector<std::uint64_t> out(digits);
                out.push_back(1);
                return out;
            }
        }
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
        if (i == digits.size()) break;
    }
    throw Error(ErrorCode::InvalidArgument, "no irreducible polynomial found");
}

FieldPtr make_field(std::uint64_t p, int nu, std::uint64_t cardinality_cap) {
    if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) throw Error(ErrorCode::UnsupportedSize, "characteristic must be below 2^31");
    if (nu < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
    if (nu > FiniteField::kMaxExtensionDegree)
        throw Error(ErrorCode::UnsupportedSize, "extension degree above " + std::to_string(FiniteField::kMaxExtensionDegree));
    std::uint64_t q = 1;
    for (int i = 0; i < nu; ++i) {
        if (q > cardinality_cap / p) throw Error(ErrorCode::UnsupportedSize, "field cardinality exceeds the cap");
        q *= p;
    }
    if (q > cardinality_cap) throw Error(ErrorCode::UnsupportedSize, "field cardinality exceeds the cap");
    std::vector<std::uint64_t> modulus;
    if (nu > 1) modulus = find_irreducible_modulus(p, nu);
    return std::make_shared<const FiniteField>(p, nu, std::move(modulus));
}

FieldPtr make_field_of_order(std::uint64_t q, std::uint64_t cardinality_cap) {
    if (q < 2) throw Error(ErrorCode::NonPrimeCharacteristic, "field order must be a prime power >= 2");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    int nu = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++nu;
    }
    if (rest != 1) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
    return make_field(p, nu, cardinality_cap);
}

Element::Element(FieldPtr field, FieldElem value) : field_(std::move(field)), value_(value) {
    if (!field_ || !field_->contains(value_)) throw Error(ErrorCode::FieldMismatch, "value is not an element of the field");
}

Element Element::operator+(const Element& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->add(value_, o.value_)};
}
Element Element::operator-(const Element& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->sub(value_, o.value_)};
}
Element Element::operator*(const Element& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->mul(value_, o.value_)};
}
Element Element::operator/(const Element& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->div(value_, o.value_)};
}
Element Element::operator-() const { return {field_, field_->neg(value_)}; }
Element Element::inv() const { return {field_, field_->inv(value_)}; }
Element Element::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
Element Element::frobenius(std::uint64_t power) const { return {field_, field_->frobenius(value_, power)}; }

}  // namespace galstat
