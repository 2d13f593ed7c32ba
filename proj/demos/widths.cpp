// Copyright 2026 The sepvol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Mean widths of the state-space bodies for a few small shapes.

#include "sepvol/sepvol.hpp"

#include <cstdio>

int main() {
  using namespace sepvol;
  const SeededStream root(7);
  std::printf("%-10s %-4s %-4s %10s %10s %s\n", "body", "D", "N", "width", "se", "kind");
  const int shapes[][2] = {{2, 1}, {2, 2}, {3, 2}, {2, 3}};
  for (const auto& sh : shapes) {
    const FactorShape s(sh[0], sh[1]);
    const BodyOracle bodies[] = {oracle_D_centered(s), oracle_Delta(s), oracle_Sigma(s, 8, 30, 7)};
    for (const auto& K : bodies) {
      const WidthEstimate w = gaussian_width_mc(K, 400, root.split(s.d())).spherical();
      std::printf("%-10s %-4d %-4d %10.5f %10.5f %s\n", K.name().c_str(), s.D(), s.N(), w.mean,
                  w.std_error, to_string(w.exactness));
    }
    const SigmaWidthBound F = sigma_width_upper(s, 0.5);
    if (s.N() > 1) std::printf("%-10s %-4d %-4d %10.5f\n", "netub", s.D(), s.N(), F.value_inf);
  }
  return 0;
}
