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

// Two qubits: PPT fraction of random states against the closed-form bounds.

#include "sepvol/sepvol.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  using namespace sepvol;
  const std::int64_t samples = argc > 1 ? std::atoll(argv[1]) : 20000;
  const FactorShape shape(2, 2);

  const PptFraction f = ppt_fraction_mc(2, samples, SeededStream(2026));
  std::printf("PPT fraction      %.5f  (%lld of %lld)\n", f.fraction,
              static_cast<long long>(f.hits), static_cast<long long>(f.samples));
  std::printf("fraction^(1/15)   %.5f  [%.5f, %.5f]\n", f.root, f.root_lower, f.root_upper);

  const TheoremReport r1 = run_theorem1(2, 2, samples, 2026);
  std::printf("Theorem 1 bounds  [%.5f, %.5f]  pass=%d\n", r1.bound("lower"), r1.bound("upper"),
              r1.pass());
  const TheoremReport r2 = run_theorem2(2, 2, samples, 2026);
  std::printf("Theorem 2 bounds  [%.5f, %.5f]  pass=%d\n", r2.bound("lower"), r2.bound("upper"),
              r2.pass());

  const WernerBoundary w = werner_ppt_boundary(2);
  std::printf("Werner boundary   %.12f\n", w.epsilon);

  const StateVolume v = vol_D_exact(static_cast<int>(shape.d()));
  std::printf("vrad(states)      %.6f\n", v.vrad);
  return 0;
}
