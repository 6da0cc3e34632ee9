#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace trimono {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

enum class FieldKind { PrimeField, Rationals };

/// Base field of all computations: F_p for a machine-word prime, or Q.
class Field {
public:
    static Field prime(unsigned long p);
    static Field rationals() { return Field(FieldKind::Rationals, 0); }

    FieldKind kind() const { return kind_; }
    unsigned long p() const { return p_; }
    bool is_prime_field() const { return kind_ == FieldKind::PrimeField; }

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string to_string() const;
    /// Parses "Q" or a prime "p".
    static Field parse(const std::string& s);

private:
    Field(FieldKind k, unsigned long p) : kind_(k), p_(p) {}
    FieldKind kind_;
    unsigned long p_;
};

/// An exact field element. Prime-field values are canonical representatives
/// in [0, p); rationals are gcd-reduced with positive denominator (GMP keeps
/// mpq_class canonical).
class Scalar {
public:
    Scalar() : p_(0) {}  // rational zero
    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar from_long(const Field& f, long long v);
    static Scalar from_mpq(mpq_class q);

    Field field() const { return p_ ? Field::prime(p_) : Field::rationals(); }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Decimal integer for prime fields; "n" or "n/d" for rationals.
    std::string to_string() const;
    static Scalar parse(const Field& f, const std::string& s);

    unsigned long long fp_value() const { return v_; }
    const mpq_class& rat_value() const;

private:
    unsigned long long v_ = 0;       // prime-field value, valid iff p_ != 0
    unsigned long p_ = 0;            // 0 means rational
    std::optional<mpq_class> q_;     // disengaged optional means rational 0

    void check_same_field(const Scalar& o) const;
};

}  // namespace trimono
