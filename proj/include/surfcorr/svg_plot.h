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

#ifndef SURFCORR_SVG_PLOT_H
#define SURFCORR_SVG_PLOT_H

#include <string>
#include <vector>

#include "surfcorr/experiment.h"

namespace surfcorr {

/// Line chart of logical rate against p on a log y axis, one polyline per (family, k, d) curve.
/// Cells with zero failures cannot sit on a log axis and are drawn as hollow markers on the x axis.
std::string render_svg(const std::vector<RunRecord> &records, const std::string &title);

}  // namespace surfcorr

#endif
