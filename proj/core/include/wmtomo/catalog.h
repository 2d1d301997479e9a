// Copyright 2026 The wmtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WMTOMO_CATALOG_H
#define WMTOMO_CATALOG_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wmtomo/operator.h"
#include "wmtomo/weak_povm.h"

namespace wmtomo {

/// Everything one experiment needs: preparation, weak measurement and the
/// final (post-selection) measurement, optionally a second, alternative
/// final measurement for joint quasi-probabilities.
struct Scenario {
    std::string name;
    DensityMatrix initial;
    WeakPovmFamily family;
    StrongPovm final_povm;
    std::optional<StrongPovm> second_final;

    Scenario with_epsilon(double epsilon) const;
};

struct CatalogParams {
    double epsilon = 0.1;
    /// "random" only.
    size_t dim = 3;
    /// "random" only; 0 means full rank.
    size_t rank = 0;
    /// "random" only; 0 means dim^2.
    size_t outcomes = 0;
    uint64_t seed = 0;
};

const std::vector<std::string> &catalog_names();

/// Built-in scenarios:
///   double-slit   rho = |+><+| in the path basis {|1>, |2>}, Pauli-6 weak
///                 family, which-path final measurement, {|+>, |->} second.
///   pauli6-qubit  generic tilted pure state, Pauli-6 weak family, sigma_z
///                 final measurement, sigma_x second.
///   sic-qubit     as pauli6-qubit with the tetrahedral SIC family.
///   random        seeded random state, weak POVM and two final POVMs.
/// Throws UnknownScenario for any other name.
Scenario catalog(std::string_view name, const CatalogParams &params = {});

/// F_{i,+/-} = (1 +/- sigma_i)/6, labels x+, x-, y+, y-, z+, z-.
StrongPovm pauli6_povm();

/// F_m = |psi_m><psi_m|/2 on the tetrahedron with one vertex at +z.
StrongPovm sic_qubit_povm();

/// F_k = T^{-1/2} A_k T^{-1/2} with A_k = G_k G_k^dagger, G_k dim x dim
/// complex Gaussian, T = sum_k A_k.
StrongPovm random_povm(size_t dim, size_t outcomes, Rng &rng);

/// The catalog's generic qubit state: Bloch angles theta = pi/3, phi = pi/5.
DensityMatrix generic_qubit_state();

}  // namespace wmtomo

#endif
