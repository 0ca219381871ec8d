#pragma once

#include <map>
#include <string>
#include <vector>

#include "flasque/resolutions.hpp"

namespace flasque {

/// Result of a Brauer-group style computation, with every route that was computed.
/// Route names: "H1_of_F", "sha1_T", "sha2_Q_shifted", "sha2_Q_direct".
struct InvariantReport {
  std::string input;
  AbelianGroupStructure brauer_quotient;
  std::map<std::string, AbelianGroupStructure> routes;
  bool consistent = true;
  SimilarityFingerprint picard_fingerprint;
  std::vector<std::string> notes;

  std::string to_string() const;
};

/// H^1(G, F) for a flasque resolution 0 -> Q -> P -> F -> 0 of the character
/// lattice Q of a torus, cross-checked against Sha^2_omega(G, Q).
InvariantReport brauer_torus_compactification(const GLattice& q);

/// Sha^1_omega(G, T) for the character lattice T of the torus attached to the
/// stabilizer, cross-checked against H^1 of a flasque cover of T.
InvariantReport brauer_homogeneous_space(const GLattice& t);

struct PicardClass {
  /// 0 -> P -> F -> T -> 0 with P permutation and F flasque.
  LatticeExtension cover;
  SimilarityFingerprint fingerprint;

  const GLattice& flasque() const noexcept { return cover.middle(); }
};
PicardClass picard_flasque_class(const GLattice& t);

/// For a surjection P -> T with P a certified permutation lattice and Q its
/// kernel: H^1(G, F), Sha^1_omega(G, T), Sha^2_omega(G, Q) through a flasque
/// resolution of Q, and Sha^2_omega(G, Q) from the bar complex when |G| is
/// within the bar cap. Throws ConsistencyError if any two routes differ.
InvariantReport verify_brauer_chain(const GLattice& t, const LatticeMap& surj);

}  // namespace flasque
