#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flasque/cohomology.hpp"
#include "flasque/extension.hpp"
#include "flasque/lattice.hpp"

namespace flasque {

struct SubgroupCohomology {
  Subgroup subgroup;
  AbelianGroupStructure group;
};

/// Outcome of a flasque or coflasque test: one computed H^1 per subgroup class.
struct CohomologyCheck {
  bool holds = true;
  std::vector<SubgroupCohomology> certificate;
};

/// H^1(H, dual M) = 0 for every subgroup H (one per conjugacy class).
CohomologyCheck is_flasque(const GLattice& m);
/// H^1(H, M) = 0 for every subgroup H (one per conjugacy class).
CohomologyCheck is_coflasque(const GLattice& m);

struct ResolutionOptions {
  enum class Generators {
    /// Add fixed-vector generators subgroup by subgroup (largest first) only
    /// until P^K -> M^K is onto for every K. Smaller P, same guarantees.
    Greedy,
    /// One Z[G/H] per basis vector of M^H for every subgroup class H.
    FullBasis,
  };
  Generators generators = Generators::Greedy;
  /// When set, candidate generators are taken in a seeded random order and
  /// multiplied by a random unimodular matrix first. Used to build
  /// independent resolutions of the same lattice.
  std::optional<std::uint64_t> shuffle_seed;
};

/// 0 -> C -> P -> M -> 0 with P a certified permutation lattice and C coflasque.
LatticeExtension coflasque_resolution(const GLattice& m, const ResolutionOptions& options = {});

/// 0 -> M -> P -> F -> 0 with P certified permutation and F flasque, together
/// with the computed H^1(H, dual F) for every subgroup class (all trivial).
class FlasqueResolution {
 public:
  /// Verifies that the middle term is certified and that F is flasque.
  explicit FlasqueResolution(LatticeExtension extension);

  const LatticeExtension& extension() const noexcept { return extension_; }
  const GLattice& lattice() const noexcept { return extension_.sub(); }
  const GLattice& permutation() const noexcept { return extension_.middle(); }
  const GLattice& flasque() const noexcept { return extension_.quotient(); }
  const PermutationCertificate& permutation_certificate() const { return *extension_.middle().permutation_certificate(); }
  const std::vector<SubgroupCohomology>& flasque_certificate() const noexcept { return flasque_certificate_; }

 private:
  LatticeExtension extension_;
  std::vector<SubgroupCohomology> flasque_certificate_;
};

/// Dual of the coflasque resolution of dual(M).
FlasqueResolution flasque_resolution(const GLattice& m, const ResolutionOptions& options = {});

/// 0 -> P1 -> F -> T -> 0 with P1 certified permutation and F flasque. Built
/// as the push-out of a coflasque resolution 0 -> C -> P0 -> T -> 0 along a
/// flasque resolution 0 -> C -> P1 -> F1 -> 0.
LatticeExtension flasque_cover(const GLattice& t, const ResolutionOptions& options = {});

/// Given 0 -> Q -> P -> T -> 0 and 0 -> P1 -> F -> T -> 0 with P, P1
/// permutation, forms E = P x_T F, splits 0 -> P1 -> E -> P -> 0 by an
/// explicit equivariant section and returns 0 -> Q -> P + P1 -> F -> 0 with
/// the middle term certified.
LatticeExtension pullback_resolution(const LatticeExtension& res_t, const LatticeExtension& res_f);

/// Ext^1(C, A) in G-lattices, as H^1(G, Hom(C, A)).
AbelianGroupStructure ext1(const GLattice& c, const GLattice& a);

/// Class of an extension in H^1(G, Hom(C, A)).
struct ExtensionClass {
  FinitelyPresentedAbelianGroup group;
  /// Normalized 1-cocycle g -> inject^-1 (g s0 g^-1 - s0) for a Z-linear section s0.
  IntVector cocycle;
  IntVector coordinates;
  bool vanishes() const { return is_zero(coordinates); }
};
ExtensionClass extension_class(const LatticeExtension& ext);

struct SplitResult {
  bool split = false;
  /// Equivariant C -> E with project * section = I, when split.
  std::optional<IntMatrix> section;
};
/// Solves for an equivariant section as an integer linear system.
SplitResult is_split(const LatticeExtension& ext);

struct FingerprintEntry {
  Subgroup subgroup;
  std::size_t fixed_rank = 0;
  AbelianGroupStructure h1;
  AbelianGroupStructure h1_dual;
  AbelianGroupStructure tate_h0;
};

/// Per subgroup class: rank M^H, H^1(H, M), H^1(H, dual M), M^H / N_H M.
struct SimilarityFingerprint {
  std::vector<FingerprintEntry> entries;

  /// Compares only the H^1 entries, which do not change under adding permutation summands.
  bool same_h1_entries(const SimilarityFingerprint& other) const;
  std::string to_string() const;
};
SimilarityFingerprint similarity_fingerprint(const GLattice& m);

enum class PermutationStatus { Permutation, NotPermutation, Unknown };

struct PermutationDetection {
  PermutationStatus status = PermutationStatus::Unknown;
  /// Columns: a Z-basis of M permuted by G, when found.
  std::optional<IntMatrix> basis;
  std::string reason;
};

/// Looks for a G-permuted Z-basis among vectors with entries in [-2, 2] (rank <= 6).
/// A nonzero H^1(H, M) or H^1(H, dual M) proves the lattice is not permutation.
/// Anything else inconclusive is reported as Unknown.
PermutationDetection detect_permutation(const GLattice& m, std::size_t node_limit = 200000);

std::string to_string(PermutationStatus status);

}  // namespace flasque
