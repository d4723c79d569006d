// analysis.cpp - decay fits, oscillation frequency, trace metrics
#include "qedtd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qedtd {

namespace {

struct Series {
    std::vector<double> t, y;
};

Series window_population(const PopulationTrace& trace, double t0, double t1) {
    Series s;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace.t[i] >= t0 && trace.t[i] <= t1) {
            s.t.push_back(trace.t[i]);
            s.y.push_back(trace.population(i));
        }
    }
    return s;
}

// Indices of strict interior local maxima (or minima).
std::vector<std::size_t> local_extrema(const std::vector<double>& y, bool maxima) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        const bool hit = maxima ? (y[i] > y[i - 1] && y[i] > y[i + 1])
                                : (y[i] < y[i - 1] && y[i] < y[i + 1]);
        if (hit)
            idx.push_back(i);
    }
    return idx;
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = (syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

} // namespace

DecayFit fit_exponential_decay(const PopulationTrace& trace, double t_start,
                               double t_end) {
    Series s = window_population(trace, t_start, t_end);
    if (s.t.size() < 4)
        throw std::invalid_argument("fit_exponential_decay: window holds fewer than 4 samples");

    DecayFit fit;
    fit.t_start = t_start;
    fit.t_end = t_end;

    std::vector<double> ft, fy;
    const auto maxima = local_extrema(s.y, true);
    if (maxima.size() >= 3) {
        fit.envelope_used = true;
        for (std::size_t i : maxima) {
            ft.push_back(s.t[i]);
            fy.push_back(s.y[i]);
        }
    } else {
        ft = s.t;
        fy = s.y;
    }

    for (double v : fy) {
        if (!(v > 0.0))
            throw std::invalid_argument(
                "fit_exponential_decay: |P|^2 not strictly positive on the window");
    }
    std::vector<double> logs(fy.size());
    for (std::size_t i = 0; i < fy.size(); ++i)
        logs[i] = std::log(fy[i]);

    const LineFit line = fit_line(ft, logs);
    fit.r_squared = line.r_squared;
    if (line.slope < 0.0)
        fit.tau = -1.0 / line.slope;
    fit.non_exponential = (line.slope >= 0.0) || (fit.r_squared < 0.95);
    return fit;
}

namespace {

// Valley detection with hysteresis: a minimum counts only when the trace
// falls and rises again by at least 5% of its peak-to-peak span, which
// rejects the small residual ripple on FDTD traces.
std::vector<std::size_t> prominent_minima(const std::vector<double>& y) {
    double lo = y[0], hi = y[0];
    for (double v : y) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double h = 0.05 * (hi - lo);
    if (!(h > 0.0))
        return {};
    std::vector<std::size_t> minima;
    bool descending = false;
    double run = y[0];
    std::size_t run_idx = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (descending) {
            if (y[i] < run) {
                run = y[i];
                run_idx = i;
            } else if (y[i] - run >= h) {
                minima.push_back(run_idx);
                descending = false;
                run = y[i];
            }
        } else {
            if (y[i] > run) {
                run = y[i];
            } else if (run - y[i] >= h) {
                descending = true;
                run = y[i];
                run_idx = i;
            }
        }
    }
    return minima;
}

} // namespace

OscillationFit extract_oscillation_frequency(const PopulationTrace& trace) {
    if (trace.size() < 8)
        throw AmbiguousOscillation("trace too short");
    const std::vector<double> y = trace.population_series();
    const std::vector<double>& t = trace.t;

    // --- primary: spacing of parabolically refined minima ---
    const auto minima = prominent_minima(y);
    if (minima.size() < 3)
        throw AmbiguousOscillation("fewer than 3 full oscillation periods");
    std::vector<double> t_min;
    for (std::size_t i : minima) {
        const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
        double shift = 0.0;
        if (denom > 0.0)
            shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
        const double h = 0.5 * (t[i + 1] - t[i - 1]);
        t_min.push_back(t[i] + shift * h);
    }
    std::vector<double> periods;
    for (std::size_t i = 1; i < t_min.size(); ++i)
        periods.push_back(t_min[i] - t_min[i - 1]);
    double mean_period = 0.0;
    for (double p : periods)
        mean_period += p;
    mean_period /= periods.size();
    double var = 0.0;
    for (double p : periods)
        var += (p - mean_period) * (p - mean_period);
    var /= periods.size();
    const double period_err =
        std::sqrt(var / std::max<std::size_t>(1, periods.size() - 1));

    OscillationFit fit;
    fit.omega = 2.0 * std::numbers::pi / mean_period;
    fit.method = OscillationMethod::MinimaSpacing;
    fit.uncertainty = fit.omega * period_err / mean_period;

    // --- cross-check: discrete spectrum peak of |P|^2 - mean ---
    const std::size_t n = y.size();
    double mean = 0.0;
    for (double v : y)
        mean += v;
    mean /= n;
    std::vector<double> xw(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double hann =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
        xw[i] = (y[i] - mean) * hann;
    }
    const double t_span = t.back() - t.front();
    const double dw = 2.0 * std::numbers::pi / (4.0 * t_span); // 4x zero-pad equivalent
    const double dt_sample = t_span / (n - 1);
    const double w_nyq = std::numbers::pi / dt_sample;
    const std::size_t n_bins = static_cast<std::size_t>(w_nyq / dw);
    double best_power = -1.0;
    std::size_t best_bin = 1;
    std::vector<double> power(n_bins, 0.0);
    for (std::size_t j = 1; j < n_bins; ++j) {
        const double w = j * dw;
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ph = w * (t[i] - t.front());
            re += xw[i] * std::cos(ph);
            im -= xw[i] * std::sin(ph);
        }
        power[j] = re * re + im * im;
        if (power[j] > best_power) {
            best_power = power[j];
            best_bin = j;
        }
    }
    double w_spec = best_bin * dw;
    if (best_bin + 1 < n_bins && best_bin >= 2) {
        const double pm = power[best_bin - 1], p0 = power[best_bin],
                     pp = power[best_bin + 1];
        const double denom = pm - 2.0 * p0 + pp;
        if (denom < 0.0)
            w_spec += 0.5 * (pm - pp) / denom * dw;
    }
    fit.omega_spectral = w_spec;

    if (std::abs(fit.omega - w_spec) > 0.05 * fit.omega)
        throw AmbiguousOscillation("minima-spacing and spectral estimates disagree");
    return fit;
}

TraceComparison compare_traces(const PopulationTrace& a, const PopulationTrace& b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("compare_traces: traces too short");
    TraceComparison cmp;
    cmp.t0 = std::max(a.t.front(), b.t.front());
    cmp.t1 = std::min(a.t.back(), b.t.back());
    if (!(cmp.t0 < cmp.t1))
        throw std::invalid_argument("compare_traces: no overlapping time window");

    const std::vector<double> pa = a.population_series();
    const std::vector<double> pb = b.population_series();

    double sup = 0.0, linf = 0.0, sum_sq_diff = 0.0, sum_sq_ref = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a.t[i];
        if (t < cmp.t0 || t > cmp.t1)
            continue;
        while (k + 2 < b.size() && b.t[k + 1] <= t)
            ++k;
        const double t0 = b.t[k], t1 = b.t[k + 1];
        const double w = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
        const double pb_at = pb[k] + w * (pb[k + 1] - pb[k]);
        const double ref = pa[i];
        sup = std::max(sup, std::abs(ref));
        linf = std::max(linf, std::abs(ref - pb_at));
        sum_sq_diff += (ref - pb_at) * (ref - pb_at);
        sum_sq_ref += ref * ref;
    }
    if (sup <= 0.0 || sum_sq_ref <= 0.0)
        throw std::invalid_argument("compare_traces: reference trace vanishes on window");
    cmp.linf_rel = linf / sup;
    cmp.l2_rel = std::sqrt(sum_sq_diff / sum_sq_ref);
    return cmp;
}

} // namespace qedtd
