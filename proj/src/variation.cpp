#include "qsz/variation.hpp"

#include <cstdint>
#include <stdexcept>

namespace qsz {

double phi_variation(const std::function<double(double)>& gauge,
                     const std::function<double(double)>& f,
                     const std::vector<double>& partition) {
    if (partition.size() < 2) throw std::invalid_argument("phi_variation: need at least two points");
    for (std::size_t i = 1; i < partition.size(); ++i)
        if (!(partition[i - 1] < partition[i]))
            throw std::invalid_argument("phi_variation: partition must be strictly increasing");
    double total = 0;
    double prev = f(partition[0]);
    for (std::size_t i = 1; i < partition.size(); ++i) {
        double cur = f(partition[i]);
        total += gauge(std::abs(cur - prev));
        prev = cur;
    }
    return total;
}

namespace {

// One level-2m cell of [0,1) contributes the increment g(right)-g(left) =
// g_m'(cell) * 4^{-2m}, and g_m'(cell) * q^m = sum_n sigma(d_{2n}) W_n q^{m-n}
// =: G with W_n = prod_{k<=n} (q + p sigma(d_{2k-1})). Cells sharing the sign
// pattern of their digits share G, so the walk visits the 9 distinct digit-
// pair classes per level and carries the class multiplicity instead of
// enumerating all 16 digit pairs.

struct OddBranch {
    long long factor;
    int mult;
};
struct EvenBranch {
    int sign;
    int mult;
};

struct WalkSink {
    // histogram mode: hist[|G|] += mult
    std::vector<std::int64_t> hist;
    // direct mode
    BigInt s_sum = 0;
    const std::vector<Gauge>* gauges = nullptr;
    std::vector<double> v_sum, v_comp;
    double inv_den = 0;

    bool hist_mode() const { return !hist.empty(); }

    void leaf64(long long abs_g, long long mult) {
        if (hist_mode()) {
            hist[static_cast<std::size_t>(abs_g)] += mult;
            return;
        }
        s_sum += BigInt(abs_g) * mult;
        double t = static_cast<double>(abs_g) * inv_den;
        for (std::size_t i = 0; i < gauges->size(); ++i) {
            double y = static_cast<double>(mult) * (*gauges)[i](t) - v_comp[i];
            double s = v_sum[i] + y;
            v_comp[i] = (s - v_sum[i]) - y;
            v_sum[i] = s;
        }
    }
    void leaf_big(const BigInt& abs_g, long long mult, const BigInt& den) {
        s_sum += abs_g * mult;
        double t = to_double(BigRat(abs_g, den));
        for (std::size_t i = 0; i < gauges->size(); ++i)
            v_sum[i] += static_cast<double>(mult) * (*gauges)[i](t);
    }
};

void walk64(int n, int m, long long q, long long p, const std::vector<long long>& qpow,
            long long W, long long G, long long mult, WalkSink& sink) {
    if (n > m) {
        sink.leaf64(G < 0 ? -G : G, mult);
        return;
    }
    const long long qp = qpow[m - n];
    const OddBranch odd[3] = {{q, 2}, {q + p, 1}, {q - p, 1}};
    const EvenBranch even[3] = {{0, 2}, {1, 1}, {-1, 1}};
    for (const auto& ob : odd) {
        long long W2 = W * ob.factor;
        for (const auto& eb : even)
            walk64(n + 1, m, q, p, qpow, W2, G + eb.sign * W2 * qp, mult * ob.mult * eb.mult, sink);
    }
}

void walk_big(int n, int m, long long q, long long p, const std::vector<BigInt>& qpow,
              const BigInt& W, const BigInt& G, long long mult, const BigInt& den, WalkSink& sink) {
    if (n > m) {
        sink.leaf_big(G < 0 ? BigInt(-G) : G, mult, den);
        return;
    }
    const OddBranch odd[3] = {{q, 2}, {q + p, 1}, {q - p, 1}};
    const EvenBranch even[3] = {{0, 2}, {1, 1}, {-1, 1}};
    for (const auto& ob : odd) {
        BigInt W2 = W * ob.factor;
        for (const auto& eb : even)
            walk_big(n + 1, m, q, p, qpow, W2, G + eb.sign * W2 * qpow[m - n], mult * ob.mult * eb.mult,
                     den, sink);
    }
}

// sum_n (q+p)^n q^{m-n}: bound for |G| and every partial state
BigInt g_bound(int m, long long q, long long p) {
    BigInt b = 0, w = 1, qp = 1;
    for (int n = 0; n < m; ++n) qp *= q;
    for (int n = 1; n <= m; ++n) {
        w *= q + p;
        qp /= q;
        b += w * qp;
    }
    return b;
}

constexpr std::size_t kHistCap = std::size_t(1) << 22;

} // namespace

std::vector<VariationRow> quadic_variation_series(const ZygmundG& zg, const std::vector<double>& qs,
                                                  int m_max, bool slow) {
    if (m_max < 1) throw std::invalid_argument("quadic_variation_series: m_max must be >= 1");
    int cap = slow ? 8 : 6;
    if (m_max > cap)
        throw std::invalid_argument(slow ? "quadic_variation_series: m_max capped at 8"
                                         : "quadic_variation_series: m_max > 6 requires slow mode");
    const long long q = zg.gamma.q, p = zg.gamma.p;
    std::vector<Gauge> gauges;
    gauges.reserve(qs.size());
    for (double g : qs) gauges.push_back(Gauge{g});

    std::vector<VariationRow> rows;
    for (int m = 1; m <= m_max; ++m) {
        BigInt den = pow4(2 * m);
        for (int k = 0; k < m; ++k) den *= q;
        BigInt bound = g_bound(m, q, p);

        WalkSink sink;
        sink.gauges = &gauges;
        sink.v_sum.assign(gauges.size(), 0.0);
        sink.v_comp.assign(gauges.size(), 0.0);
        sink.inv_den = to_double(BigRat(1, den));

        if (bound <= BigInt(kHistCap)) {
            sink.hist.assign(static_cast<std::size_t>(bound.convert_to<long long>()) + 1, 0);
            std::vector<long long> qpow(m + 1);
            qpow[0] = 1;
            for (int k = 1; k <= m; ++k) qpow[k] = qpow[k - 1] * q;
            walk64(1, m, q, p, qpow, 1, 0, 1, sink);
            // collapse the histogram: exact S numerator, then the gauge sums
            BigInt s_num = 0;
            for (std::size_t a = 0; a < sink.hist.size(); ++a)
                if (sink.hist[a]) s_num += BigInt(a) * sink.hist[a];
            std::vector<double> V(gauges.size(), 0.0);
            for (std::size_t a = 1; a < sink.hist.size(); ++a) {
                if (!sink.hist[a]) continue;
                double t = static_cast<double>(a) * sink.inv_den;
                for (std::size_t i = 0; i < gauges.size(); ++i)
                    V[i] += static_cast<double>(sink.hist[a]) * gauges[i](t);
            }
            rows.push_back({m, BigRat(s_num, den), std::move(V)});
        } else if (bound <= (BigInt(1) << 61)) {
            std::vector<long long> qpow(m + 1);
            qpow[0] = 1;
            for (int k = 1; k <= m; ++k) qpow[k] = qpow[k - 1] * q;
            walk64(1, m, q, p, qpow, 1, 0, 1, sink);
            rows.push_back({m, BigRat(sink.s_sum, den), std::move(sink.v_sum)});
        } else {
            std::vector<BigInt> qpow(m + 1);
            qpow[0] = 1;
            for (int k = 1; k <= m; ++k) qpow[k] = qpow[k - 1] * q;
            walk_big(1, m, q, p, qpow, 1, 0, 1, den, sink);
            rows.push_back({m, BigRat(sink.s_sum, den), std::move(sink.v_sum)});
        }
    }
    return rows;
}

namespace {

void maxint_walk(int k, int m, long long q, long long p, const BigInt& W, const BigInt& Mstar,
                 long long mult, BigInt& total) {
    if (k == m) {
        total += Mstar * mult;
        return;
    }
    const OddBranch odd[3] = {{q, 2}, {q + p, 1}, {q - p, 1}};
    for (const auto& ob : odd) {
        BigInt W2 = W * ob.factor;
        BigInt M2 = Mstar * q;
        if (W2 > M2) M2 = W2;
        maxint_walk(k + 1, m, q, p, W2, M2, mult * ob.mult, total);
    }
}

} // namespace

BigRat max_weight_integral(const Gamma& gamma, int m, bool slow) {
    if (m < 1) throw std::invalid_argument("max_weight_integral: m must be >= 1");
    int cap = slow ? 8 : 6;
    if (m > cap)
        throw std::invalid_argument(slow ? "max_weight_integral: m capped at 8"
                                         : "max_weight_integral: m > 6 requires slow mode");
    BigInt total = 0;
    maxint_walk(0, m, gamma.q, gamma.p, 1, 0, 1, total);
    BigInt den = pow4(m);
    for (int k = 0; k < m; ++k) den *= gamma.q;
    return BigRat(total, den);
}

LogPowerFit log_power_fit(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 3) throw std::invalid_argument("log_power_fit: need at least 3 points");
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    double first_N = series.front().first;
    bool varied = false;
    for (auto [N, sigma] : series) {
        if (!(N > 0) || !(sigma > 0))
            throw std::invalid_argument("log_power_fit: N and Sigma must be positive");
        if (N != first_N) varied = true;
        double x = std::log(std::log(N + 1));
        double y = std::log(sigma);
        n += 1; sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    if (!varied) throw std::invalid_argument("log_power_fit: degenerate series (all N equal)");
    LogPowerFit fit;
    fit.p = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - fit.p * sx) / n;
    fit.C = std::exp(intercept);
    fit.residual = 0;
    for (auto [N, sigma] : series) {
        double x = std::log(std::log(N + 1));
        double r = std::log(sigma) - (intercept + fit.p * x);
        fit.residual += r * r;
    }
    return fit;
}

} // namespace qsz
