#ifndef SQK_TESTS_SUPPORT_HPP
#define SQK_TESTS_SUPPORT_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqk/formula.hpp"

namespace sqk::test {

// Truth table of a squash-free propositional formula over at most five
// letters, one bit per valuation. Written independently of the oracle module.
class BitTable {
 public:
  explicit BitTable(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.size() > 5) throw std::invalid_argument("too many letters");
  }

  std::uint32_t all() const { return rows() == 32 ? 0xffffffffu : (1u << rows()) - 1; }

  std::uint32_t eval(const Formula& f) const {
    switch (f.kind()) {
      case Connective::False: return 0;
      case Connective::True: return all();
      case Connective::Atom: return letter(f.name());
      case Connective::And: return eval(f.lhs()) & eval(f.rhs());
      case Connective::Or: return eval(f.lhs()) | eval(f.rhs());
      case Connective::Imp: return (~eval(f.lhs()) | eval(f.rhs())) & all();
      case Connective::Squash: return eval(f.body());
      default: throw std::invalid_argument("BitTable: unsupported connective");
    }
  }

  bool valid(const Formula& f) const { return eval(f) == all(); }

  // Valuation of row r: letter i is true when bit i of r is set.
  std::map<std::string, bool> row(unsigned r) const {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < letters_.size(); ++i) v[letters_[i]] = (r >> i) & 1u;
    return v;
  }

  unsigned rows() const { return 1u << letters_.size(); }

 private:
  std::uint32_t letter(const std::string& name) const {
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (letters_[i] != name) continue;
      std::uint32_t bits = 0;
      for (unsigned r = 0; r < rows(); ++r)
        if ((r >> i) & 1u) bits |= 1u << r;
      return bits;
    }
    throw std::invalid_argument("BitTable: unknown letter " + name);
  }

  std::vector<std::string> letters_;
};

// Number of corpus formulas with exactly k binary connectives, from the
// recurrence c(0) = leaves, c(k) = binaries * sum c(i) c(k-1-i).
inline std::vector<std::size_t> corpus_counts(std::size_t leaves, std::size_t binaries, int depth) {
  std::vector<std::size_t> c{leaves};
  for (int k = 1; k <= depth; ++k) {
    std::size_t n = 0;
    for (int i = 0; i < k; ++i) n += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - 1 - i)];
    c.push_back(binaries * n);
  }
  return c;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string data_path(const std::string& name) { return std::string(SQK_TEST_DATA) + "/" + name; }

}  // namespace sqk::test

#endif  // SQK_TESTS_SUPPORT_HPP
