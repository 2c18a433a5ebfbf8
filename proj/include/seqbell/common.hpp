#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqbell {

// Argument validation: caller passed something outside the contract.
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Internal invariant: if this fires, the library itself is broken.
inline void check(bool cond, const std::string& msg) {
    if (!cond) throw std::logic_error(msg);
}

namespace num {

// Deterministic pairwise (binary-counter) summation. Accumulation order is a
// pure function of the push order, so results do not depend on how the caller
// partitioned the work, and rounding error stays O(log N).
class PairwiseSum {
  public:
    void push(double x) {
        block_ += x;
        if (++fill_ == kBlock) {
            carry(block_);
            block_ = 0.0;
            fill_ = 0;
        }
    }

    [[nodiscard]] double total() const {
        double t = block_;
        for (double lvl : levels_) t += lvl;
        return t;
    }

    [[nodiscard]] std::int64_t count() const { return n_; }

    void push_counted(double x) {
        ++n_;
        push(x);
    }

  private:
    static constexpr int kBlock = 64;

    void carry(double v) {
        std::size_t i = 0;
        while (i < levels_.size() && occupied_[i]) {
            v += levels_[i];
            occupied_[i] = false;
            ++i;
        }
        if (i == levels_.size()) {
            levels_.push_back(v);
            occupied_.push_back(true);
        } else {
            levels_[i] = v;
            occupied_[i] = true;
        }
    }

    double block_ = 0.0;
    int fill_ = 0;
    std::int64_t n_ = 0;
    std::vector<double> levels_;
    std::vector<bool> occupied_;
};

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;  // sample variance (N-1 denominator), 0 when n < 2
    std::int64_t n = 0;

    [[nodiscard]] double se() const { return n > 0 ? std::sqrt(variance / static_cast<double>(n)) : 0.0; }
};

// Two-pass pairwise mean/variance over values produced by value_of(i).
template <class F>
MeanVar mean_var_over(std::int64_t n, F&& value_of) {
    MeanVar out;
    out.n = n;
    if (n == 0) return out;
    PairwiseSum s;
    for (std::int64_t i = 0; i < n; ++i) s.push(value_of(i));
    out.mean = s.total() / static_cast<double>(n);
    if (n < 2) return out;
    PairwiseSum sq;
    for (std::int64_t i = 0; i < n; ++i) {
        const double d = value_of(i) - out.mean;
        sq.push(d * d);
    }
    out.variance = sq.total() / static_cast<double>(n - 1);
    return out;
}

inline MeanVar mean_var(std::span<const double> xs) {
    return mean_var_over(static_cast<std::int64_t>(xs.size()), [&](std::int64_t i) { return xs[static_cast<std::size_t>(i)]; });
}

// Bracketed bisection for a monotone sign change; f(lo) and f(hi) must differ
// in sign. Tolerance is on the abscissa.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol) {
    double flo = f(lo);
    double fhi = f(hi);
    require(flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0), "bisect: root not bracketed");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    while (hi - lo > xtol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section minimizer for a unimodal objective on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double xtol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace num
}  // namespace seqbell
