// Copyright 2026 The corpdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORPDIST_SVG_HPP_
#define CORPDIST_SVG_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace corpdist {

/// One panel: a box per group, labelled along the x axis.
struct BoxPanel {
  std::string title;
  std::string x_label;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> groups;
};

/// Tukey boxplots (quartiles, 1.5 IQR whiskers, outlier dots), one panel
/// per row.
void write_boxplot_svg(std::ostream& out, std::span<const BoxPanel> panels);

}  // namespace corpdist

#endif  // CORPDIST_SVG_HPP_
