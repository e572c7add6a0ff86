#ifndef GRPEXT_GROUPOID_HPP
#define GRPEXT_GROUPOID_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grpext {

class FiniteGroupoid;
using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

/// Raw groupoid tables, index based. Object and arrow identifiers are kept
/// for reporting and serialization; producers keep them sorted so that the
/// stored order is the canonical order.
struct GroupoidData {
  std::vector<std::string> object_names;
  std::vector<std::string> arrow_names;
  std::vector<int> src;   // arrow -> object
  std::vector<int> tgt;   // arrow -> object
  std::vector<int> unit;  // object -> arrow
  std::vector<int> inv;   // arrow -> arrow
  // Explicit composition entries (g, h, gh). Arrows compose left to right:
  // the pair (g, h) means "g followed by h" and requires tgt(g) == src(h).
  std::vector<std::array<int, 3>> compose;
};

enum class ViolationKind {
  Structural,
  CompositionDomain,
  Associativity,
  Unit,
  Inverse,
};

const char* violation_kind_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationResult {
  GroupoidPtr groupoid;  // set iff violations is empty
  std::vector<Violation> violations;
  bool ok() const { return groupoid != nullptr; }
};

/// A finite groupoid with a dense composition table. Immutable after
/// validation; safe to share across threads.
class FiniteGroupoid {
 public:
  int num_objects() const { return static_cast<int>(data_.object_names.size()); }
  int num_arrows() const { return static_cast<int>(data_.arrow_names.size()); }

  int src(int a) const { return data_.src[a]; }
  int tgt(int a) const { return data_.tgt[a]; }
  int unit(int x) const { return data_.unit[x]; }
  int inverse(int a) const { return data_.inv[a]; }
  bool is_unit(int a) const { return is_unit_[a] != 0; }

  bool composable(int g, int h) const { return data_.tgt[g] == data_.src[h]; }

  /// Composite of g followed by h; requires tgt(g) == src(h).
  int compose(int g, int h) const { return table_[g * num_arrows() + h]; }

  const std::string& object_name(int x) const { return data_.object_names[x]; }
  const std::string& arrow_name(int a) const { return data_.arrow_names[a]; }
  int object_index(const std::string& name) const;  // -1 if absent
  int arrow_index(const std::string& name) const;   // -1 if absent

  const GroupoidData& data() const { return data_; }

  /// Loops at x, in canonical order.
  std::vector<int> loops_at(int x) const;
  /// Arrows x -> y, in canonical order.
  std::vector<int> hom(int x, int y) const;
  /// Connected components of the object set (objects linked by arrows);
  /// component ids are dense, assigned in canonical order.
  std::vector<int> object_components() const;

  bool same_tables(const FiniteGroupoid& other) const;

  /// Checks every axiom on the raw data and wraps it on success.
  static ValidationResult validate(GroupoidData data);

 private:
  explicit FiniteGroupoid(GroupoidData data);

  GroupoidData data_;
  std::vector<int> table_;  // dense |A1| x |A1|, -1 where undefined
  std::vector<char> is_unit_;
};

// --- Standard groupoids -----------------------------------------------------

/// Zero-padded identifier "<prefix><i>" with enough digits for `count` items.
std::string padded_name(const std::string& prefix, int i, int count);

/// One-object groupoid B(G) for the group given by `mult`, where
/// mult[g][h] is "g followed by h". Element 0 must be the identity.
GroupoidPtr group_groupoid(const std::vector<std::vector<int>>& mult,
                           const std::vector<std::string>& element_names,
                           const std::string& object_name = "o");

GroupoidPtr cyclic_group_groupoid(int n);     // B(Z/n), arrows e, g1, ..
GroupoidPtr klein_four_groupoid();            // B(Z/2 x Z/2)
GroupoidPtr symmetric3_groupoid();            // B(S3)
GroupoidPtr pair_groupoid(int n);             // n objects, arrows (i, j)
GroupoidPtr unit_groupoid(int n);             // n objects, identity arrows only
GroupoidPtr disjoint_union(const std::vector<GroupoidPtr>& parts);

}  // namespace grpext

#endif
