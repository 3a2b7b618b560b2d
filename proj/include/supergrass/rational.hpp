#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

#include "supergrass/errors.hpp"

namespace supergrass {

/// Element of the field Q(i): an exact complex rational.  Arithmetic never
/// rounds; conjugation negates the imaginary part.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long r) : re_(r), im_(0) {}            // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class r) : re_(std::move(r)), im_(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re_(std::move(r)), im_(std::move(i)) {}

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    /// Parses "p/q" (or "p") strings for the real and imaginary parts.
    static GaussianRational parse(const std::string& re, const std::string& im) {
        mpq_class r, i;
        try {
            r = mpq_class(re);
            i = mpq_class(im);
        } catch (const std::invalid_argument&) {
            throw parse_error("bad rational literal: '" + re + "' / '" + im + "'");
        }
        r.canonicalize();
        i.canonicalize();
        return {r, i};
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, mpq_class(-im_)}; }

    /// |z|^2 as an exact rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = i;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw non_invertible_error("division by zero in Q(i)");
        mpq_class n = o.norm();
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = r;
        im_ = i;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Total order used only to make containers and serialization deterministic.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    std::string str() const {
        if (im_ == 0) return re_.get_str();
        if (re_ == 0) return im_.get_str() + "*i";
        return "(" + re_.get_str() + (sgn(im_) < 0 ? "" : "+") + im_.get_str() + "*i)";
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.str(); }

private:
    mpq_class re_, im_;
};

inline GaussianRational pow(GaussianRational base, unsigned long e) {
    GaussianRational acc = GaussianRational::one();
    while (e != 0) {
        if (e & 1UL) acc *= base;
        base *= base;
        e >>= 1UL;
    }
    return acc;
}

} // namespace supergrass
