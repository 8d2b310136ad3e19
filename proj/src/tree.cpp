#include "roughren/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace roughren {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

Tree::Tree(Decoration dec) : Tree(dec, {}) {}

Tree::Tree(Decoration dec, std::vector<Tree> children) {
  if (dec < 0) throw DecorationError("negative decoration");
  std::sort(children.begin(), children.end());
  std::size_t size = 1;
  std::size_t zeros = dec == 0 ? 1 : 0;
  Decoration max_dec = dec;
  for (const auto& c : children) {
    size += c.size();
    zeros += c.zero_count();
    max_dec = std::max(max_dec, c.max_decoration());
  }
  node_ = std::make_shared<const Node>(Node{dec, std::move(children), size, zeros, max_dec});
}

Forest Tree::branches() const { return Forest(node_->children); }

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.decoration() <=> b.decoration(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.children().begin(), a.children().end(),
                                                b.children().begin(), b.children().end());
}

std::strong_ordering canonical_order(const Tree& a, const Tree& b) { return a <=> b; }

Forest::Forest(Tree t) : trees_{std::move(t)} {
  size_ = trees_.front().size();
  zeros_ = trees_.front().zero_count();
}

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
  std::sort(trees_.begin(), trees_.end());
  for (const auto& t : trees_) {
    size_ += t.size();
    zeros_ += t.zero_count();
  }
}

const Tree& Forest::as_tree() const {
  if (trees_.size() != 1) throw std::logic_error("forest is not a single tree: " + encode(*this));
  return trees_.front();
}

Forest operator*(const Forest& a, const Forest& b) {
  Forest out;
  out.trees_.reserve(a.trees_.size() + b.trees_.size());
  std::merge(a.trees_.begin(), a.trees_.end(), b.trees_.begin(), b.trees_.end(),
             std::back_inserter(out.trees_));
  out.size_ = a.size_ + b.size_;
  out.zeros_ = a.zeros_ + b.zeros_;
  return out;
}

std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.trees_.begin(), a.trees_.end(),
                                                b.trees_.begin(), b.trees_.end());
}

Tree b_plus(const Forest& f, Decoration i) { return Tree(i, f.trees()); }

Forest b_minus(const Tree& t) { return t.branches(); }

namespace {

void encode_into(const Tree& t, std::string& out) {
  out += std::to_string(t.decoration());
  out += '[';
  bool first = true;
  for (const auto& c : t.children()) {
    if (!first) out += ' ';
    first = false;
    encode_into(c, out);
  }
  out += ']';
}

class Parser {
 public:
  Parser(std::string_view text, std::optional<Decoration> max_dec)
      : text_(text), max_dec_(max_dec) {}

  Tree tree() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected decoration digit", pos_);
    long long dec = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      dec = dec * 10 + (text_[pos_] - '0');
      if (dec > 1'000'000) throw ParseError("decoration too large", start);
      ++pos_;
    }
    if (max_dec_ && dec > *max_dec_)
      throw DecorationError("decoration " + std::to_string(dec) + " exceeds d = " +
                            std::to_string(*max_dec_) + " at byte " + std::to_string(start));
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '[') throw ParseError("expected '['", pos_);
    ++pos_;
    std::vector<Tree> children;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("unterminated child list", pos_);
      if (text_[pos_] == ']') {
        ++pos_;
        break;
      }
      children.push_back(tree());
    }
    return Tree(static_cast<Decoration>(dec), std::move(children));
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  std::size_t pos() const { return pos_; }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::optional<Decoration> max_dec_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode(const Tree& t) {
  std::string out;
  encode_into(t, out);
  return out;
}

std::string encode(const Forest& f) {
  std::string out;
  for (const auto& t : f.trees()) {
    if (!out.empty()) out += ' ';
    encode_into(t, out);
  }
  return out;
}

Tree decode_tree(std::string_view text, std::optional<Decoration> max_decoration) {
  Parser p(text, max_decoration);
  Tree t = p.tree();
  if (!p.at_end()) throw ParseError("trailing characters after tree", p.pos());
  return t;
}

Forest decode_forest(std::string_view text, std::optional<Decoration> max_decoration) {
  Parser p(text, max_decoration);
  std::vector<Tree> trees;
  while (!p.at_end()) trees.push_back(p.tree());
  return Forest(std::move(trees));
}

std::vector<Tree> decode_tree_sequence(std::string_view text,
                                       std::optional<Decoration> max_decoration) {
  Parser p(text, max_decoration);
  std::vector<Tree> trees;
  while (!p.at_end()) trees.push_back(p.tree());
  return trees;
}

namespace {

/// Trees grouped by exact size; index 0 unused.
class TreeTable {
 public:
  TreeTable(int d, std::size_t cap) : d_(d), cap_(cap), by_size_(1) {}

  const std::vector<Tree>& of_size(int n) {
    while (static_cast<int>(by_size_.size()) <= n) grow();
    return by_size_[n];
  }

  /// Multisets of trees with total size exactly m, as sorted vectors.
  std::vector<std::vector<Tree>> multisets(int m) {
    std::vector<Tree> pool;
    for (int k = 1; k <= m; ++k) {
      const auto& layer = of_size(k);
      pool.insert(pool.end(), layer.begin(), layer.end());
    }
    std::vector<std::vector<Tree>> out;
    std::vector<Tree> current;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int remaining) {
      if (remaining == 0) {
        out.push_back(current);
        if (out.size() > cap_) throw ResourceError("forest enumeration exceeds cap");
        return;
      }
      for (std::size_t i = from; i < pool.size(); ++i) {
        const int s = static_cast<int>(pool[i].size());
        if (s > remaining) break;  // pool is sorted by size first
        current.push_back(pool[i]);
        rec(i, remaining - s);
        current.pop_back();
      }
    };
    rec(0, m);
    return out;
  }

 private:
  void grow() {
    const int n = static_cast<int>(by_size_.size());
    std::vector<Tree> layer;
    auto child_sets = n == 1 ? std::vector<std::vector<Tree>>{{}} : multisets(n - 1);
    for (Decoration i = 0; i <= d_; ++i)
      for (const auto& cs : child_sets) {
        layer.emplace_back(i, cs);
        if (layer.size() > cap_) throw ResourceError("tree enumeration exceeds cap");
      }
    std::sort(layer.begin(), layer.end());
    by_size_.push_back(std::move(layer));
  }

  int d_;
  std::size_t cap_;
  std::vector<std::vector<Tree>> by_size_;
};

}  // namespace

std::vector<Tree> trees_of_size(int n, int d, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("tree size must be >= 1");
  if (d < 0) throw std::invalid_argument("decoration bound must be >= 0");
  TreeTable table(d, cap);
  return table.of_size(n);
}

std::vector<Tree> enumerate_trees(int n_max, int d, std::size_t cap) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (d < 0) throw std::invalid_argument("decoration bound must be >= 0");
  TreeTable table(d, cap);
  std::vector<Tree> out;
  for (int n = 1; n <= n_max; ++n) {
    const auto& layer = table.of_size(n);
    out.insert(out.end(), layer.begin(), layer.end());
    if (out.size() > cap) throw ResourceError("tree enumeration exceeds cap");
  }
  return out;
}

std::vector<Forest> enumerate_forests(int n_max, int d, std::size_t cap) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  TreeTable table(d, cap);
  std::vector<Forest> out{Forest()};
  for (int m = 1; m <= n_max; ++m) {
    auto layer = table.multisets(m);
    std::vector<Forest> forests;
    forests.reserve(layer.size());
    for (auto& trees : layer) forests.emplace_back(std::move(trees));
    std::sort(forests.begin(), forests.end());
    out.insert(out.end(), forests.begin(), forests.end());
    if (out.size() > cap) throw ResourceError("forest enumeration exceeds cap");
  }
  return out;
}

}  // namespace roughren
