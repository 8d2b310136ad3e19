#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace roughren {

/// Node decoration in {0, ..., d}. Decoration 0 marks contracted
/// (renormalised) nodes and the time-like driver component.
using Decoration = int;

/// Decoded text did not follow `tree := dec "[" tree* "]"`.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A decoration exceeded the configured alphabet bound d.
class DecorationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Enumeration would exceed its configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Forest;

/// Non-empty rooted tree with decorated nodes, always in canonical form: the
/// children are sorted non-decreasingly under the canonical order. Immutable;
/// copies share structure.
class Tree {
 public:
  /// Single node •_dec.
  explicit Tree(Decoration dec);
  /// B^dec_+ of the given children, canonicalised.
  Tree(Decoration dec, std::vector<Tree> children);

  Decoration decoration() const noexcept { return node_->dec; }
  const std::vector<Tree>& children() const noexcept { return node_->children; }
  /// Node count |τ|.
  std::size_t size() const noexcept { return node_->size; }
  /// Number of 0-decorated nodes |τ|₀.
  std::size_t zero_count() const noexcept { return node_->zeros; }
  Decoration max_decoration() const noexcept { return node_->max_dec; }
  bool is_node() const noexcept { return node_->children.empty(); }

  /// Forest of the root's children.
  Forest branches() const;

  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b);
  friend bool operator==(const Tree& a, const Tree& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Decoration dec;
    std::vector<Tree> children;
    std::size_t size;
    std::size_t zeros;
    Decoration max_dec;
  };
  std::shared_ptr<const Node> node_;
};

/// Canonical total order: node count, then root decoration, then the child
/// lists compared lexicographically under the same order.
std::strong_ordering canonical_order(const Tree& a, const Tree& b);

/// Commutative product of trees; the empty forest is the unit 𝟏. Stored as a
/// sorted sequence so equal multisets have equal representations.
class Forest {
 public:
  Forest() = default;
  explicit Forest(Tree t);
  explicit Forest(std::vector<Tree> trees);

  const std::vector<Tree>& trees() const noexcept { return trees_; }
  bool empty() const noexcept { return trees_.empty(); }
  std::size_t tree_count() const noexcept { return trees_.size(); }
  /// Σ|τᵢ|.
  std::size_t size() const noexcept { return size_; }
  /// Σ|τᵢ|₀.
  std::size_t zero_count() const noexcept { return zeros_; }
  bool is_tree() const noexcept { return trees_.size() == 1; }
  const Tree& as_tree() const;

  friend Forest operator*(const Forest& a, const Forest& b);
  friend std::strong_ordering operator<=>(const Forest& a, const Forest& b);
  friend bool operator==(const Forest& a, const Forest& b) { return (a <=> b) == 0; }

 private:
  std::vector<Tree> trees_;
  std::size_t size_ = 0;
  std::size_t zeros_ = 0;
};

/// B^i_+: graft the trees of `f` onto a new root decorated `i`.
Tree b_plus(const Forest& f, Decoration i);
/// Inverse of b_plus: the branches of the root.
Forest b_minus(const Tree& t);

std::string encode(const Tree& t);
/// Trees separated by single spaces in canonical order; 𝟏 encodes as "".
std::string encode(const Forest& f);

/// Whitespace-insensitive. Throws ParseError (with byte offset) on malformed
/// input, DecorationError when a decoration exceeds `max_decoration`.
Tree decode_tree(std::string_view text, std::optional<Decoration> max_decoration = std::nullopt);
Forest decode_forest(std::string_view text,
                     std::optional<Decoration> max_decoration = std::nullopt);

/// Trees in the order written (no canonical sorting of the sequence).
std::vector<Tree> decode_tree_sequence(std::string_view text,
                                       std::optional<Decoration> max_decoration = std::nullopt);

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

/// All trees with exactly `n` nodes and decorations in {0..d}, canonical order.
std::vector<Tree> trees_of_size(int n, int d, std::size_t cap = kDefaultEnumerationCap);
/// All trees with 1 ≤ |τ| ≤ n_max, each exactly once, in canonical order.
std::vector<Tree> enumerate_trees(int n_max, int d, std::size_t cap = kDefaultEnumerationCap);
/// All forests with |f| ≤ n_max including 𝟏, in canonical forest order.
std::vector<Forest> enumerate_forests(int n_max, int d,
                                      std::size_t cap = kDefaultEnumerationCap);

}  // namespace roughren
