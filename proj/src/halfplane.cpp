#include "qsz/halfplane.hpp"

#include "qsz/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qsz {

namespace {

constexpr double kPi = std::numbers::pi;

// principal log with the branch pulled to the lower edge on the negative real
// axis, so that t -> log(t - z) stays continuous when Im z = 0
inline Complex lower_log(Complex w) {
    if (w.imag() == 0.0 && w.real() < 0.0) return {std::log(-w.real()), -kPi};
    return std::log(w);
}

// edge term of int log(t-z) dt: (t-z)log(t-z) - t, with the 0*log(0) limit
inline Complex log_edge(double t, Complex z) {
    Complex w = Complex(t, 0) - z;
    if (w == Complex(0, 0)) return {-t, 0};
    return w * lower_log(w) - t;
}

// complex + real edge pair, for kernels evaluated in one pass
struct Edge2 {
    Complex a{};
    double b = 0;
    Edge2 operator-(const Edge2& o) const { return {a - o.a, b - o.b}; }
    Edge2& operator+=(const Edge2& o) {
        a += o.a;
        b += o.b;
        return *this;
    }
    friend Edge2 operator*(double w, const Edge2& e) { return {w * e.a, w * e.b}; }
};

// Sum over window cells of W_c * (edge(t_right) - edge(t_left)), one partial
// per unit interval; partials are merged in unit order by the caller, so the
// result does not depend on scheduling.
template <class EdgeFn, class Acc>
void sweep_units(long long T, long long cells, const std::vector<double>& W, EdgeFn&& edge,
                 std::vector<Acc>& unit_out) {
    const double width = 1.0 / static_cast<double>(cells);
    const long long units = 2 * T;
    unit_out.assign(static_cast<std::size_t>(units), Acc{});
    for_each_chunk(static_cast<int>(units), [&](int u) {
        const double base = static_cast<double>(u - T);
        Acc acc{};
        auto prev = edge(base);
        for (long long j = 0; j < cells; ++j) {
            auto cur = edge(base + width * static_cast<double>(j + 1));
            acc += W[static_cast<std::size_t>(j)] * (cur - prev);
            prev = cur;
        }
        unit_out[static_cast<std::size_t>(u)] = acc;
    });
}

} // namespace

HerglotzMap::HerglotzMap(RieszMeasure meas, int density_depth, double density_scale)
    : meas_(std::move(meas)), depth_(density_depth), scale_(density_scale) {
    if (depth_ < 1 || depth_ > 6)
        throw std::invalid_argument("HerglotzMap: density_depth must be in [1,6]");
    if (!meas_.gamma.is_zero() && depth_ > 5)
        throw std::invalid_argument(
            "HerglotzMap: density_depth 6 with gamma > 0 exceeds the per-evaluation cell budget");
    T_ = 1LL << (2 * depth_);
    if (meas_.gamma.is_zero()) {
        // density is 1 everywhere: integrate over unit cells
        cell_level_ = 0;
        cells_per_unit_ = 1;
        weights_ = {1.0};
        weight_den_ = 1.0;
    } else {
        cell_level_ = 2 * depth_ - 1;
        cells_per_unit_ = 1LL << (2 * cell_level_);
        weights_.resize(static_cast<std::size_t>(cells_per_unit_));
        const long long q = meas_.gamma.q, p = meas_.gamma.p;
        for (long long idx = 0; idx < cells_per_unit_; ++idx) {
            long long w = 1;
            for (int k = 1; k <= depth_; ++k) {
                int d = static_cast<int>((idx >> (2 * (cell_level_ - (2 * k - 1)))) & 3);
                w *= q + p * kDigitSign[d];
            }
            weights_[static_cast<std::size_t>(idx)] = static_cast<double>(w);
        }
        weight_den_ = std::pow(static_cast<double>(q), depth_);
    }
}

void HerglotzMap::require_upper(Complex z) const {
    if (!(z.imag() > 0)) throw std::invalid_argument("HerglotzMap: requires Im z > 0");
}

Complex HerglotzMap::f_second(Complex z) const {
    require_upper(z);
    std::vector<Complex> parts;
    sweep_units(T_, cells_per_unit_, weights_,
                [z](double t) { return 1.0 / (Complex(t, 0) - z); }, parts);
    // int_c (t-z)^{-2} dt = inv(left) - inv(right): telescoped sum flips sign
    Complex total = 0;
    for (const auto& p : parts) total -= p;
    return total * (scale_ / weight_den_) / (kPi * Complex(0, 1));
}

double HerglotzMap::re_f_prime(Complex z) const {
    require_upper(z);
    const double x = z.real(), y = z.imag();
    std::vector<double> parts;
    sweep_units(T_, cells_per_unit_, weights_,
                [x, y](double t) { return std::atan((t - x) / y); }, parts);
    double total = 0;
    for (double p : parts) total += p;
    // the 1/y from the arctan antiderivative cancels against Im z / pi
    return total * (scale_ / weight_den_) / kPi;
}

Complex HerglotzMap::f_prime(Complex z) const {
    require_upper(z);
    std::vector<Edge2> parts;
    sweep_units(T_, cells_per_unit_, weights_,
                [z](double t) {
                    return Edge2{std::log(Complex(t, 0) - z), 0.5 * std::log1p(t * t)};
                },
                parts);
    Edge2 s{};
    for (const auto& p : parts) s += p;
    return (s.a - s.b) * (scale_ / weight_den_) / (kPi * Complex(0, 1));
}

HerglotzMap::KernelRatio HerglotzMap::kernel_ratio(Complex z) const {
    require_upper(z);
    const double x = z.real(), y = z.imag();
    std::vector<Edge2> parts;
    sweep_units(T_, cells_per_unit_, weights_,
                [z, x, y](double t) {
                    return Edge2{1.0 / (Complex(t, 0) - z), std::atan((t - x) / y)};
                },
                parts);
    Complex num = 0;
    double den = 0;
    for (const auto& p : parts) {
        num -= p.a;
        den += p.b;
    }
    KernelRatio out;
    out.numerator_abs = std::abs(num) * scale_ / weight_den_;
    out.denominator = (den / y) * scale_ / weight_den_;
    out.ratio = out.numerator_abs / out.denominator;
    out.tail_bound = tail_bound_kernel(z);
    return out;
}

double HerglotzMap::reduced_ratio(Complex z) const {
    KernelRatio kr = kernel_ratio(z);
    // 2 Im z |f''| / Re f' collapses to 2 num/den: the pi and Im z cancel
    return 2.0 * kr.numerator_abs / kr.denominator;
}

void HerglotzMap::ensure_f_cache() const {
    if (cached_logi_ && cached_reghalf_) return;
    const Complex zi(0, 1);
    std::vector<Edge2> parts;
    sweep_units(T_, cells_per_unit_, weights_,
                [zi](double t) { return Edge2{log_edge(t, zi), 0.5 * std::log1p(t * t)}; }, parts);
    Edge2 s{};
    for (const auto& p : parts) s += p;
    cached_logi_ = s.a;
    cached_reghalf_ = s.b;
}

Complex HerglotzMap::f_upper(Complex z) const {
    if (z.imag() < 0) throw std::invalid_argument("f_upper: requires Im z >= 0");
    const Complex zi(0, 1);
    if (z == zi) return z; // normalization f(i) = i
    ensure_f_cache();
    std::vector<Complex> parts;
    sweep_units(T_, cells_per_unit_, weights_, [z](double t) { return log_edge(t, z); }, parts);
    Complex lgz = 0;
    for (const auto& p : parts) lgz += p;
    Complex integral = *cached_logi_ - lgz - (z - zi) * (*cached_reghalf_);
    return zi + integral * (scale_ / weight_den_) / (kPi * zi);
}

Complex HerglotzMap::extend_F(Complex z) const {
    if (z.imag() >= 0) return f_upper(z);
    Complex zb = std::conj(z);
    return f_upper(zb) + (z - zb) * f_prime(zb);
}

HerglotzMap::TraceResult HerglotzMap::trace_consistency(const QuadicRational& a,
                                                        const QuadicRational& b) const {
    if (!(a < b)) throw std::invalid_argument("trace_consistency: requires a < b");
    QuadicRational quarter(T_ / 4, 0);
    if (a < -quarter || b > quarter)
        throw std::invalid_argument("trace_consistency: endpoints must satisfy |a|,|b| <= T/4");
    TraceResult r;
    r.height = std::pow(4.0, -2 * depth_);
    Complex Fa = f_upper(Complex(a.to_double(), r.height));
    Complex Fb = f_upper(Complex(b.to_double(), r.height));
    r.lhs = (Fb - Fa).real();
    r.mu = meas_.mu_ab(a, b) * QuadicRational::from_double(scale_).value();
    r.residual = std::abs(r.lhs - to_double(r.mu));
    return r;
}

double HerglotzMap::tail_bound_kernel(Complex z) const {
    // mu([-t,t]) <= 4t for t >= 1 (integer cells carry unit mass), so
    // int_{|t|>T} t^-2 dmu <= 8/T; moving t^-2 to |t-z|^-2 costs (1-|z|/T)^-2
    double T = static_cast<double>(T_);
    double r = std::abs(z);
    if (r >= T / 2) return std::numeric_limits<double>::infinity();
    double shift = 1.0 / ((1.0 - r / T) * (1.0 - r / T));
    return scale_ * shift * 8.0 / T;
}

double HerglotzMap::tail_bound_f_prime(Complex z) const {
    // |1/(t-z) - t/(1+t^2)| = |1+tz| / (|t-z| (1+t^2)) <= (1/t^3 + |z|/t^2) * slack
    double T = static_cast<double>(T_);
    double r = std::abs(z);
    if (r >= T / 2) return std::numeric_limits<double>::infinity();
    double shift = 1.0 / (1.0 - r / T);
    return scale_ * (1.0 + 1.0 / (T * T)) * shift * (6.0 / (T * T) + r * 8.0 / T) / kPi;
}

LipschitzReport lipschitz_delta_check(const BigRat& L, const std::vector<BigRat>& slopes) {
    if (!(L > 0)) throw std::invalid_argument("lipschitz_delta_check: L must be positive");
    LipschitzReport rep;
    rep.L = L;
    BigRat L2 = L * L;
    rep.re_fz = (L2 + 1) / 2;
    rep.k_sq = ((L2 - 1) * (L2 - 1) + L2) / ((L2 + 1) * (L2 + 1));
    rep.k = std::sqrt(to_double(rep.k_sq));
    for (const auto& s : slopes) {
        BigRat as = s < 0 ? BigRat(-s) : s;
        if (as > L) throw std::invalid_argument("lipschitz_delta_check: |slope| exceeds L");
        LipschitzRow row;
        row.slope = s;
        row.fzbar_sq = ((L2 - 1) * (L2 - 1) + s * s) / 4;
        row.abs_fzbar = std::sqrt(to_double(row.fzbar_sq));
        row.ratio = row.abs_fzbar / to_double(rep.re_fz);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(std::move(row));
    }
    rep.ok = rep.k_sq < 1;
    for (const auto& row : rep.rows)
        if (row.fzbar_sq > rep.k_sq * rep.re_fz * rep.re_fz) rep.ok = false;
    return rep;
}

} // namespace qsz
