#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace gtzeta {

using BigInt = mpz_class;

inline BigInt factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// Exact rational number, always kept in lowest terms with positive denominator.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(long n, long d) : q_(n, d) { canon(); }
    Rat(const BigInt& n) : q_(n) {}
    Rat(const BigInt& n, const BigInt& d) : q_(n, d) { canon(); }
    explicit Rat(const mpq_class& q) : q_(q) { canon(); }

    /// Parses "p/q" or "p"; denominator must be positive after reduction.
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(BigInt(s));
            return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("malformed rational: " + s);
        }
    }

    const BigInt num() const { return q_.get_num(); }
    const BigInt den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { Rat r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    Rat inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rat(den(), num());
    }

    Rat abs() const { Rat r; r.q_ = ::abs(q_); return r; }

    Rat pow(long e) const {
        if (e == 0) return Rat(1);
        const Rat base = e > 0 ? *this : inverse();
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), base.q_.get_num().get_mpz_t(),
                   static_cast<unsigned long>(e > 0 ? e : -e));
        mpz_pow_ui(d.get_mpz_t(), base.q_.get_den().get_mpz_t(),
                   static_cast<unsigned long>(e > 0 ? e : -e));
        return Rat(n, d);
    }

    /// Exact square root if this is a perfect square of a rational.
    std::optional<Rat> sqrt_exact() const {
        if (sign() < 0) return std::nullopt;
        mpz_class n = q_.get_num(), d = q_.get_den(), rn, rd;
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return std::nullopt;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return Rat(rn, rd);
    }

    /// p-adic valuation v_p(num) - v_p(den); requires a nonzero value.
    long p_valuation(long p) const {
        if (is_zero()) throw std::domain_error("valuation of zero");
        auto val = [&](mpz_class x) {
            long v = 0;
            mpz_class q, r, pp(p);
            x = ::abs(x);
            while (x != 1) {
                mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
                if (r != 0) break;
                ++v;
                x = q;
            }
            return v;
        };
        return val(q_.get_num()) - val(q_.get_den());
    }

    /// "p/q" in lowest terms (den > 0), or "p" when integral.
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

private:
    void canon() {
        if (q_.get_den() == 0) throw std::domain_error("zero denominator");
        q_.canonicalize();
    }

    mpq_class q_;
};

inline Rat rat_factorial(long n) { return Rat(factorial(n)); }

/// (-1)^e for any integer e, including negative exponents.
inline long parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace gtzeta
