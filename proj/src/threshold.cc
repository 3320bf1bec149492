// Copyright 2026 The surfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "surfcorr/threshold.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "surfcorr/errors.h"
#include "surfcorr/rng.h"

namespace surfcorr {

namespace {

struct Curve {
    std::vector<double> p;
    std::vector<double> y;
};

double log_rate(uint64_t failures, uint64_t shots) {
    return std::log((static_cast<double>(failures) + 0.5) / (static_cast<double>(shots) + 1));
}

std::map<int, std::map<double, CurvePoint>> group(std::span<const CurvePoint> points) {
    std::map<int, std::map<double, CurvePoint>> by_d;
    for (const auto &pt : points) {
        if (pt.shots == 0 || pt.failures > pt.shots) {
            throw ContractViolation("curve point needs 0 <= failures <= shots and shots > 0");
        }
        auto &cell = by_d[pt.d][pt.p];
        cell.d = pt.d;
        cell.p = pt.p;
        cell.shots += pt.shots;
        cell.failures += pt.failures;
    }
    return by_d;
}

// Least-squares line through (x, y); returns {intercept, slope}.
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double den = n * sxx - sx * sx;
    double slope = den == 0 ? 0 : (n * sxy - sx * sy) / den;
    return {(sy - slope * sx) / n, slope};
}

double crossing(const Curve &low_d, const Curve &high_d, int d1, int d2) {
    // Shared grid.
    std::vector<double> ps;
    std::vector<double> diff;
    std::vector<double> y1;
    std::vector<double> y2;
    for (size_t a = 0, b = 0; a < low_d.p.size() && b < high_d.p.size();) {
        if (low_d.p[a] < high_d.p[b]) {
            ++a;
        } else if (high_d.p[b] < low_d.p[a]) {
            ++b;
        } else {
            ps.push_back(low_d.p[a]);
            y1.push_back(low_d.y[a]);
            y2.push_back(high_d.y[b]);
            diff.push_back(high_d.y[b] - low_d.y[a]);
            ++a;
            ++b;
        }
    }
    if (ps.size() < 4) {
        throw InfeasibleError("curves d=" + std::to_string(d1) + " and d=" + std::to_string(d2) +
                              " share fewer than 4 grid points");
    }
    // Largest upward sign change of (larger d) - (smaller d).
    int best = -1;
    for (size_t i = 0; i + 1 < ps.size(); ++i) {
        if (diff[i] < 0 && diff[i + 1] >= 0 && (best < 0 || diff[i + 1] - diff[i] > diff[best + 1] - diff[best])) {
            best = static_cast<int>(i);
        }
    }
    if (best < 0) {
        throw InfeasibleError("curves d=" + std::to_string(d1) + " and d=" + std::to_string(d2) +
                              " do not cross inside the p grid");
    }
    size_t lo = static_cast<size_t>(std::clamp(best - 1, 0, static_cast<int>(ps.size()) - 4));
    std::span<const double> xw(ps.data() + lo, 4);
    auto [a1, b1] = fit_line(xw, std::span<const double>(y1.data() + lo, 4));
    auto [a2, b2] = fit_line(xw, std::span<const double>(y2.data() + lo, 4));
    double x = (a1 - a2) / (b2 - b1);
    if (!std::isfinite(x) || x < ps[lo] || x > ps[lo + 3]) {
        // Fits are parallel or disagree with the bracket; interpolate the bracketing pair instead.
        double t = -diff[best] / (diff[best + 1] - diff[best]);
        x = ps[best] + t * (ps[best + 1] - ps[best]);
    }
    return x;
}

std::vector<double> crossings_of(const std::map<int, std::map<double, CurvePoint>> &by_d,
                                 const std::map<int, std::vector<uint64_t>> *failures_override) {
    std::vector<std::pair<int, Curve>> curves;
    for (const auto &[d, cells] : by_d) {
        Curve c;
        size_t idx = 0;
        for (const auto &[p, pt] : cells) {
            uint64_t f = failures_override ? failures_override->at(d)[idx] : pt.failures;
            c.p.push_back(p);
            c.y.push_back(log_rate(f, pt.shots));
            ++idx;
        }
        curves.emplace_back(d, std::move(c));
    }
    std::vector<double> out;
    for (size_t i = 0; i + 1 < curves.size(); ++i) {
        out.push_back(crossing(curves[i].second, curves[i + 1].second, curves[i].first, curves[i + 1].first));
    }
    return out;
}

double mean(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

}  // namespace

Interval wilson_ci(uint64_t failures, uint64_t shots, double z) {
    if (shots == 0) {
        throw ContractViolation("wilson_ci needs at least one shot");
    }
    if (failures > shots) {
        throw ContractViolation("wilson_ci: failures exceed shots");
    }
    double n = static_cast<double>(shots);
    double phat = static_cast<double>(failures) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (failures == 0) {
        ci.low = 0;
    }
    if (failures == shots) {
        ci.high = 1;
    }
    return ci;
}

std::vector<double> pairwise_crossings(std::span<const CurvePoint> points) {
    auto by_d = group(points);
    if (by_d.size() < 2) {
        throw InfeasibleError("threshold estimation needs at least 2 distances");
    }
    return crossings_of(by_d, nullptr);
}

ThresholdEstimate estimate_threshold(std::span<const CurvePoint> points, const ThresholdOptions &options) {
    auto by_d = group(points);
    if (by_d.size() < 2) {
        throw InfeasibleError("threshold estimation needs at least 2 distances");
    }
    ThresholdEstimate est;
    for (const auto &[d, cells] : by_d) {
        est.distances.push_back(d);
        if (cells.size() < 4) {
            throw InfeasibleError("distance " + std::to_string(d) + " has fewer than 4 grid points");
        }
    }
    est.pair_crossings = crossings_of(by_d, nullptr);
    est.p_th = mean(est.pair_crossings);
    est.method = "log-rate line crossing, 4-point local fits, mean over consecutive distance pairs";

    Rng rng(options.seed);
    std::vector<double> samples;
    std::map<int, std::vector<uint64_t>> resampled;
    for (int r = 0; r < options.resamples; ++r) {
        for (const auto &[d, cells] : by_d) {
            auto &f = resampled[d];
            f.clear();
            for (const auto &[p, pt] : cells) {
                double rate = static_cast<double>(pt.failures) / static_cast<double>(pt.shots);
                std::binomial_distribution<uint64_t> binom(pt.shots, rate);
                f.push_back(binom(rng));
            }
        }
        try {
            samples.push_back(mean(crossings_of(by_d, &resampled)));
        } catch (const InfeasibleError &) {
            // Resample without a crossing; it contributes no estimate.
        }
    }
    est.resamples_used = static_cast<int>(samples.size());
    est.ci = {est.p_th, est.p_th};
    if (!samples.empty()) {
        std::sort(samples.begin(), samples.end());
        auto at = [&](double q) {
            double pos = q * static_cast<double>(samples.size() - 1);
            size_t i = static_cast<size_t>(std::floor(pos));
            size_t j = std::min(i + 1, samples.size() - 1);
            return samples[i] + (pos - static_cast<double>(i)) * (samples[j] - samples[i]);
        };
        est.ci = {std::min(at(0.025), est.p_th), std::max(at(0.975), est.p_th)};
    }
    return est;
}

std::vector<double> nearest_grid_points(std::span<const CurvePoint> points, double p_th, size_t count) {
    std::set<double> grid;
    for (const auto &pt : points) {
        grid.insert(pt.p);
    }
    std::vector<double> ps(grid.begin(), grid.end());
    std::stable_sort(ps.begin(), ps.end(),
                     [&](double a, double b) { return std::abs(a - p_th) < std::abs(b - p_th); });
    ps.resize(std::min(count, ps.size()));
    std::sort(ps.begin(), ps.end());
    return ps;
}

}  // namespace surfcorr
