#include "imgb/tree.hpp"

#include <algorithm>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

TreeShape::TreeShape(unsigned d, unsigned n) : degree(d), height(n) {
  if (d < 2) throw InputError("tree degree must be at least 2");
  if (n < 1) throw InputError("tree height must be at least 1");
}

std::size_t TreeShape::level_size(unsigned k) const {
  std::size_t s = 1;
  for (unsigned i = 0; i < k; ++i) s *= degree;
  return s;
}

std::size_t TreeShape::index_of(const Word& w) const {
  std::size_t idx = 0;
  for (unsigned letter : w) {
    if (letter < 1 || letter > degree) throw InputError("word letter out of range");
    idx = idx * degree + (letter - 1);
  }
  return idx;
}

Word TreeShape::word_at(std::size_t index, unsigned length) const {
  Word w(length);
  for (unsigned k = length; k-- > 0;) {
    w[k] = static_cast<unsigned>(index % degree) + 1;
    index /= degree;
  }
  return w;
}

std::string TreeShape::word_string(std::size_t index) const {
  Word w = word_at(index);
  std::ostringstream os;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (degree > 9 && k) os << '.';
    os << w[k];
  }
  return os.str();
}

Word TreeShape::parse_word(const std::string& text) const {
  Word w;
  if (degree <= 9 && text.find('.') == std::string::npos) {
    for (char c : text) {
      if (c < '1' || c > '9') throw InputError("bad word: " + text);
      w.push_back(static_cast<unsigned>(c - '0'));
    }
  } else {
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, '.')) w.push_back(static_cast<unsigned>(std::stoul(part)));
  }
  if (w.size() != height) throw InputError("word length must equal tree height: " + text);
  for (unsigned letter : w)
    if (letter < 1 || letter > degree) throw InputError("word letter out of range: " + text);
  return w;
}

std::vector<std::size_t> Branch::points(const TreeShape& shape) const {
  const std::size_t size = shape.level_size(height);
  std::size_t first = 0;
  for (unsigned letter : prefix) first = first * shape.degree + (letter - 1);
  first *= size;
  std::vector<std::size_t> out(size);
  for (std::size_t k = 0; k < size; ++k) out[k] = first + k;
  return out;
}

unsigned distance(const TreeShape& shape, const Word& v, const Word& w) {
  if (v.size() != shape.height || w.size() != shape.height)
    throw PreconditionError("distance: words must have length n");
  unsigned m = 0;
  while (m < shape.height && v[m] == w[m]) ++m;
  return shape.height - m;
}

const char* to_string(BlockClass c) {
  switch (c) {
    case BlockClass::SingleBranch: return "branch";
    case BlockClass::BasicUnion: return "basic-union";
    case BlockClass::NotBasic: return "non-basic";
  }
  return "?";
}

BlockShape classify_block_shape(const TreeShape& shape, std::span<const std::size_t> subset) {
  if (subset.empty()) throw PreconditionError("classify_block_shape: empty subset");
  std::vector<std::size_t> pts(subset.begin(), subset.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Smallest branch containing the set: height t where all points agree on
  // their index divided by d^t.
  unsigned t = 0;
  while (t < shape.height) {
    const std::size_t size = shape.level_size(t);
    if (pts.front() / size == pts.back() / size) break;
    ++t;
  }
  const std::size_t branch_size = shape.level_size(t);
  if (pts.size() == branch_size) return {BlockClass::SingleBranch, t, 1};

  // Union of height-(t-1) branches?
  const std::size_t sub = shape.level_size(t - 1);
  if (pts.size() % sub == 0) {
    bool whole = true;
    std::size_t count = 0;
    for (std::size_t k = 0; k < pts.size() && whole; k += sub) {
      if (pts[k] % sub != 0 || pts[k + sub - 1] != pts[k] + sub - 1) whole = false;
      ++count;
    }
    if (whole && count >= 2) return {BlockClass::BasicUnion, t - 1, count};
  }
  return {BlockClass::NotBasic, t, 0};
}

bool contains_full_cycle_check(const Permutation& perm, const TreeShape& shape) {
  return perm.degree() == shape.leaves() && perm.is_full_cycle();
}

Permutation truncate_to_level(const Permutation& perm, const TreeShape& shape, unsigned level) {
  if (perm.degree() != shape.leaves()) throw PreconditionError("truncate: degree mismatch");
  const std::size_t below = shape.level_size(shape.height - level);
  std::vector<Point> images(shape.level_size(level));
  for (std::size_t v = 0; v < images.size(); ++v)
    images[v] = static_cast<Point>(perm(static_cast<Point>(v * below)) / below);
  return Permutation::from_images(std::move(images));
}

bool preserves_tree(const Permutation& perm, const TreeShape& shape) {
  if (perm.degree() != shape.leaves()) return false;
  for (unsigned h = 1; h < shape.height; ++h) {
    const std::size_t size = shape.level_size(h);
    for (std::size_t start = 0; start < perm.degree(); start += size) {
      const std::size_t target = perm(static_cast<Point>(start)) / size;
      for (std::size_t k = 1; k < size; ++k)
        if (perm(static_cast<Point>(start + k)) / size != target) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

TreePortrait::TreePortrait(TreeShape shape, std::vector<Permutation> vertex_perms)
    : shape_(shape), perms_(std::move(vertex_perms)) {
  std::size_t total = 0;
  for (unsigned k = 0; k < shape_.height; ++k) {
    level_offset_.push_back(total);
    total += shape_.level_size(k);
  }
  if (perms_.size() != total) throw PreconditionError("portrait: wrong number of vertex permutations");
  for (const auto& p : perms_)
    if (p.degree() != shape_.degree) throw PreconditionError("portrait: vertex permutation degree");
}

TreePortrait TreePortrait::identity(const TreeShape& shape) {
  std::size_t total = 0;
  for (unsigned k = 0; k < shape.height; ++k) total += shape.level_size(k);
  return TreePortrait(shape, std::vector<Permutation>(total, Permutation::identity(shape.degree)));
}

TreePortrait TreePortrait::random(const TreeShape& shape, std::mt19937_64& rng,
                                  double identity_bias) {
  std::size_t total = 0;
  for (unsigned k = 0; k < shape.height; ++k) total += shape.level_size(k);
  std::vector<Permutation> perms;
  perms.reserve(total);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t v = 0; v < total; ++v) {
    std::vector<Point> images(shape.degree);
    for (Point x = 0; x < shape.degree; ++x) images[x] = x;
    if (!(identity_bias > 0.0 && coin(rng) < identity_bias)) {
      // Fisher-Yates with an explicit draw so results depend only on the engine.
      for (std::size_t k = images.size(); k > 1; --k) {
        std::size_t j = static_cast<std::size_t>(rng() % k);
        std::swap(images[k - 1], images[j]);
      }
    }
    perms.push_back(Permutation::from_images(std::move(images)));
  }
  return TreePortrait(shape, std::move(perms));
}

const Permutation& TreePortrait::vertex(unsigned level, std::size_t index) const {
  return perms_[level_offset_[level] + index];
}

Permutation TreePortrait::unroll(unsigned level) const {
  if (level > shape_.height) throw PreconditionError("portrait unroll beyond height");
  const unsigned d = shape_.degree;
  // images at level k built from level k-1: vertex v·x -> g(v)·(perm_v(x))
  std::vector<Point> current{0};
  for (unsigned k = 0; k < level; ++k) {
    std::vector<Point> next(current.size() * d);
    for (std::size_t v = 0; v < current.size(); ++v) {
      const Permutation& pv = vertex(k, v);
      for (unsigned x = 0; x < d; ++x)
        next[v * d + x] = static_cast<Point>(current[v] * d + pv(x));
    }
    current = std::move(next);
  }
  return Permutation::from_images(std::move(current));
}

TreePortrait compose(const TreePortrait& a, const TreePortrait& b) {
  if (a.shape_.degree != b.shape_.degree || a.shape_.height != b.shape_.height)
    throw PreconditionError("portrait compose: shape mismatch");
  const TreeShape& s = a.shape_;
  std::vector<Permutation> perms;
  for (unsigned k = 0; k < s.height; ++k) {
    const Permutation bk = b.unroll(k);
    for (std::size_t v = 0; v < s.level_size(k); ++v)
      perms.push_back(compose(a.vertex(k, bk(static_cast<Point>(v))), b.vertex(k, v)));
  }
  return TreePortrait(s, std::move(perms));
}

}  // namespace imgb
