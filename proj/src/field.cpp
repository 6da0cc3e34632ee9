#include "trimono/field.hpp"

namespace trimono {

namespace {

bool is_prime_ull(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

unsigned long long inv_mod(unsigned long long a, unsigned long long p) {
    // extended Euclid
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(p), newr = static_cast<long long>(a % p);
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    require(r == 1, "element not invertible mod p");
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<unsigned long long>(t);
}

}  // namespace

Field Field::prime(unsigned long p) {
    require(p >= 2 && p < (1ul << 31), "prime field characteristic out of range");
    require(is_prime_ull(p), "field characteristic must be prime: " + std::to_string(p));
    return Field(FieldKind::PrimeField, p);
}

std::string Field::to_string() const {
    return kind_ == FieldKind::Rationals ? "Q" : std::to_string(p_);
}

Field Field::parse(const std::string& s) {
    if (s == "Q" || s == "q") return rationals();
    try {
        return prime(std::stoul(s));
    } catch (const std::invalid_argument&) {
        throw Error("cannot parse field '" + s + "'");
    }
}

Scalar Scalar::zero(const Field& f) {
    Scalar s;
    if (f.is_prime_field()) {
        s.p_ = f.p();
        s.v_ = 0;
    }
    return s;
}

Scalar Scalar::one(const Field& f) { return from_long(f, 1); }

Scalar Scalar::from_long(const Field& f, long long v) {
    Scalar s;
    if (f.is_prime_field()) {
        long long p = static_cast<long long>(f.p());
        long long r = v % p;
        if (r < 0) r += p;
        s.p_ = f.p();
        s.v_ = static_cast<unsigned long long>(r);
    } else if (v != 0) {
        s.q_ = mpq_class(static_cast<long>(v));
    }
    return s;
}

Scalar Scalar::from_mpq(mpq_class q) {
    Scalar s;
    q.canonicalize();
    if (q != 0) s.q_ = std::move(q);
    return s;
}

bool Scalar::is_zero() const { return p_ ? v_ == 0 : (!q_ || *q_ == 0); }

bool Scalar::is_one() const { return p_ ? v_ == 1 : (q_ && *q_ == 1); }

const mpq_class& Scalar::rat_value() const {
    static const mpq_class kZero(0);
    require(p_ == 0, "not a rational scalar");
    return q_ ? *q_ : kZero;
}

void Scalar::check_same_field(const Scalar& o) const {
    require(p_ == o.p_, "scalar field mismatch");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar s;
    if (p_) {
        s.p_ = p_;
        s.v_ = v_ + o.v_;
        if (s.v_ >= p_) s.v_ -= p_;
    } else if (q_ || o.q_) {
        s = from_mpq(rat_value() + o.rat_value());
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar s;
    if (p_) {
        s.p_ = p_;
        s.v_ = v_ ? p_ - v_ : 0;
    } else if (q_) {
        s.q_ = -*q_;
    }
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar s;
    if (p_) {
        s.p_ = p_;
        s.v_ = (v_ * o.v_) % p_;
    } else if (q_ && o.q_) {
        s = from_mpq(*q_ * *o.q_);
    }
    return s;
}

Scalar Scalar::inverse() const {
    require(!is_zero(), "division by zero");
    Scalar s;
    if (p_) {
        s.p_ = p_;
        s.v_ = inv_mod(v_, p_);
    } else {
        s = from_mpq(1 / *q_);
    }
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (p_ != o.p_) return false;
    return p_ ? v_ == o.v_ : rat_value() == o.rat_value();
}

std::string Scalar::to_string() const {
    if (p_) return std::to_string(v_);
    return rat_value().get_str();
}

Scalar Scalar::parse(const Field& f, const std::string& s) {
    require(!s.empty(), "empty scalar literal");
    if (f.is_prime_field()) {
        require(s.find('/') == std::string::npos,
                "fractional literal '" + s + "' not allowed over F_p");
        try {
            return from_long(f, std::stoll(s));
        } catch (const std::exception&) {
            throw Error("cannot parse scalar '" + s + "'");
        }
    }
    try {
        mpq_class q(s);
        return from_mpq(q);
    } catch (const std::exception&) {
        throw Error("cannot parse scalar '" + s + "'");
    }
}

}  // namespace trimono
