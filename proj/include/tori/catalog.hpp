#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tori/permgroup.hpp"

namespace tori {

// Origin of a catalog entry's generator list:
//   WorkedExample - generator list taken verbatim from a worked example;
//   Constructed   - produced by a named construction in this library
//                   (cyclic/dihedral/symmetric/alternating actions, wreath
//                   products, Moebius actions, coset actions, affine groups);
//   Derived       - exported by tools/catalog_tool into a versioned fixture
//                   file, with the derivation recorded in the file's note.
enum class Provenance { WorkedExample, Constructed, Derived };

std::string provenanceName(Provenance p);
Provenance provenanceFromName(const std::string& name);

// One catalog group: label (nTm or family name), the degree it acts on, its
// order, and a generator list in cycle notation.  Every entry is verified on
// load: the generated group must be transitive of the stated degree with the
// recorded order.
struct CatalogEntry {
  std::string label;
  int degree = 0;
  long long order = 0;
  std::vector<std::string> generators;
  Provenance provenance = Provenance::Constructed;
  std::string note;

  friend bool operator==(const CatalogEntry& a, const CatalogEntry& b) {
    return a.label == b.label && a.degree == b.degree && a.order == b.order &&
           a.generators == b.generators && a.provenance == b.provenance && a.note == b.note;
  }
  friend bool operator!=(const CatalogEntry& a, const CatalogEntry& b) { return !(a == b); }
};

// Central-extension input: explicit generators of the covering group together
// with the image of each generator in the base group.  The induced map must
// be a surjective homomorphism onto the base (verified by realizeCover).
struct CoverSpec {
  int degree = 0;
  long long order = 0;
  std::vector<std::string> generators;
  std::vector<std::string> epiImages;

  friend bool operator==(const CoverSpec& a, const CoverSpec& b) {
    return a.degree == b.degree && a.order == b.order && a.generators == b.generators &&
           a.epiImages == b.epiImages;
  }
  friend bool operator!=(const CoverSpec& a, const CoverSpec& b) { return !(a == b); }
};

// On-disk group description (one JSON object per file).
struct GroupSpec {
  CatalogEntry entry;
  std::optional<CoverSpec> cover;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.entry == b.entry && a.cover == b.cover;
  }
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }
};

// JSON serialization; stable field order, two-space indent, trailing newline.
// parseGroupSpec(printGroupSpec(s)) == s.  Malformed input raises ParseError.
std::string printGroupSpec(const GroupSpec& spec);
GroupSpec parseGroupSpec(const std::string& jsonText);
GroupSpec loadGroupSpecFile(const std::string& path);

// A cover specification realized as verified group objects.
struct CoverInput {
  PermGroup base;
  PermGroup cover;
  GroupHom epi;  // cover -> base, surjective
};
CoverInput realizeCover(const GroupSpec& spec);

// Raised for labels the catalog does not know; carries closest known labels.
class UnknownLabelError : public std::runtime_error {
 public:
  UnknownLabelError(const std::string& message, std::vector<std::string> nearest)
      : std::runtime_error(message), suggestions(std::move(nearest)) {}
  std::vector<std::string> suggestions;
};

// All nTm labels the catalog can resolve, sorted by (degree, index).
const std::vector<std::string>& catalogLabels();
std::vector<std::string> catalogLabelsOfDegree(int degree);

// Metadata + generators for a label (nTm, or a family name: C<n>, D<2m>,
// S<n>, A<n>, V4, E<p^k>, Q8, PSL(2,p), PGL(2,p)).  The group is built and
// verified before the entry is returned.
CatalogEntry catalogEntry(const std::string& label);

// The verified group itself.
PermGroup catalogGet(const std::string& label);

// Resolve a CLI group argument: either a catalog label or an inline
// description "<degree>:<gen>;<gen>;...)" in cycle notation.
PermGroup parseGroupText(const std::string& text);

// Directory searched for fixture-backed labels ("<dir>/<label>.json").
// Resolution order: explicit override, then the TORI_FIXTURE_DIR environment
// variable, then the compile-time default.
void setFixtureDirectory(const std::string& path);
std::string fixtureDirectory();

}  // namespace tori
