#ifndef SQK_FORMULA_HPP
#define SQK_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sqk {

enum class Connective : std::uint8_t {
  Atom,
  Pred,
  False,
  True,
  And,
  Or,
  Imp,
  Forall,
  Exists,
  Squash,
};

// Immutable, shared formula tree. Negation is not a constructor: ~F is
// Imp(F, False). Copies are cheap and safe to share across threads.
class Formula {
 public:
  struct Node;

  Formula() = delete;

  Connective kind() const;
  bool is(Connective c) const { return kind() == c; }

  // Atom / predicate name.
  const std::string& name() const;
  // Individual variable: predicate argument or quantifier binder.
  const std::string& var() const;

  // Binary connectives.
  const Formula& lhs() const;
  const Formula& rhs() const;
  // Quantifier body or squash operand.
  const Formula& body() const;

  std::size_t hash() const;
  // Number of nodes.
  std::size_t size() const;

  bool is_negation() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend Formula make_formula(Node n);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective kind;
  std::string name;
  std::string var;
  std::vector<Formula> kids;
  std::size_t hash = 0;
  std::size_t size = 1;
};

Formula atom(std::string name);
Formula pred(std::string name, std::string arg);
Formula falsum();
Formula verum();
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula neg(Formula a);
Formula forall(std::string var, Formula body);
Formula exists(std::string var, Formula body);
Formula squash(Formula a);

bool is_quantifier_free(const Formula& f);
bool is_squash_free(const Formula& f);

std::set<std::string> free_vars(const Formula& f);

// Capture-avoiding replacement of free occurrences of individual variable
// `var` by individual variable `by`.
Formula subst_var(const Formula& f, const std::string& var, const std::string& by);

// Structural equality up to renaming of bound individual variables.
bool alpha_equal(const Formula& a, const Formula& b);

// Atom names and predicate names occurring in f.
std::set<std::string> atom_names(const Formula& f);
std::set<std::string> predicate_names(const Formula& f);

// Maximum nesting of connectives (leaves have depth 0).
int depth(const Formula& f);

}  // namespace sqk

#endif  // SQK_FORMULA_HPP
