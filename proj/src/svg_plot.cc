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

#include "surfcorr/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace surfcorr {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 50;

constexpr const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::vector<RunRecord> &records, const std::string &title) {
    using Key = std::tuple<std::string, int, int, int>;
    std::map<Key, std::vector<const RunRecord *>> series;
    double pmin = 1, pmax = 0, ymin = 1, ymax = 0;
    for (const auto &r : records) {
        series[{r.family, r.k, r.d, r.rounds}].push_back(&r);
        pmin = std::min(pmin, r.p);
        pmax = std::max(pmax, r.p);
        if (r.logical_rate > 0) {
            ymin = std::min(ymin, r.logical_rate);
            ymax = std::max(ymax, r.logical_rate);
        }
    }
    if (pmax <= pmin) {
        pmin -= 0.01;
        pmax += 0.01;
    }
    if (ymax <= 0) {
        ymin = 1e-3;
        ymax = 1;
    }
    double lo = std::floor(std::log10(ymin));
    double hi = std::max(lo + 1, std::ceil(std::log10(ymax)));
    double plot_w = kWidth - kLeft - kRight;
    double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double p) { return kLeft + (p - pmin) / (pmax - pmin) * plot_w; };
    auto sy = [&](double y) { return kTop + (hi - std::log10(y)) / (hi - lo) * plot_h; };

    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << escape(title) << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double e = lo; e <= hi; e += 1) {
        double y = sy(std::pow(10.0, e));
        out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << y
            << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        double p = pmin + (pmax - pmin) * i / 4;
        double x = sx(p);
        out << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x << "\" y2=\"" << kTop + plot_h + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">" << p << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">p</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 16 " << kTop + plot_h / 2
        << ")\" text-anchor=\"middle\">logical error rate</text>\n";

    size_t idx = 0;
    for (auto &[key, list] : series) {
        std::sort(list.begin(), list.end(), [](const RunRecord *a, const RunRecord *b) { return a->p < b->p; });
        const char *color = kColors[idx % std::size(kColors)];
        std::ostringstream pts;
        pts.precision(6);
        for (const RunRecord *r : list) {
            if (r->logical_rate > 0) {
                pts << sx(r->p) << "," << sy(r->logical_rate) << " ";
            }
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts.str()
            << "\"/>\n";
        for (const RunRecord *r : list) {
            if (r->logical_rate > 0) {
                out << "<circle cx=\"" << sx(r->p) << "\" cy=\"" << sy(r->logical_rate) << "\" r=\"3\" fill=\""
                    << color << "\"/>\n";
            } else {
                out << "<circle cx=\"" << sx(r->p) << "\" cy=\"" << kTop + plot_h << "\" r=\"3\" fill=\"none\" stroke=\""
                    << color << "\"/>\n";
            }
        }
        const auto &[family, k, d, rounds] = key;
        std::string label = family + (k > 0 ? " k=" + std::to_string(k) : "") + " d=" + std::to_string(d);
        double ly = kTop + 10 + 18 * static_cast<double>(idx);
        out << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 32
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kWidth - kRight + 38 << "\" y=\"" << ly + 4 << "\">" << escape(label) << "</text>\n";
        ++idx;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace surfcorr
