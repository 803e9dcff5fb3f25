#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <string>

namespace cocycle::sym {

using Rat = boost::multiprecision::cpp_rational;

/// Gaussian rational re + im*i. The kernel never touches floating point:
/// an identity either holds exactly or it does not.
struct GRat {
    Rat re = 0;
    Rat im = 0;

    GRat() = default;
    GRat(long r) : re(r) {}
    GRat(Rat r) : re(std::move(r)) {}
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GRat i() { return GRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }

    GRat operator-() const { return GRat(-re, -im); }
    GRat& operator+=(const GRat& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    GRat& operator-=(const GRat& o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GRat operator+(GRat a, const GRat& b) { return a += b; }
    friend GRat operator-(GRat a, const GRat& b) { return a -= b; }
    friend GRat operator*(const GRat& a, const GRat& b)
    {
        return GRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GRat operator/(const GRat& a, const GRat& b)
    {
        Rat d = b.re * b.re + b.im * b.im;
        if (d == 0)
            throw std::domain_error("GRat: division by zero");
        return GRat((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }

    std::string str() const
    {
        std::ostringstream os;
        if (im == 0) {
            os << re;
        } else if (re == 0) {
            os << im << " i";
        } else {
            os << "(" << re << " + " << im << " i)";
        }
        return os.str();
    }
};

} // namespace cocycle::sym
