#include "quasilattice/cluster.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace quasilattice {

SignedPermutation::SignedPermutation(std::vector<int> images,
                                     std::vector<int> signs)
    : images_(std::move(images)), signs_(std::move(signs)) {
  if (images_.size() != signs_.size())
    throw std::invalid_argument("signed permutation: images/signs length differ");
  for (int s : signs_)
    if (s != 1 && s != -1)
      throw std::invalid_argument("signed permutation: signs must be +-1");
}

SignedPermutation SignedPermutation::identity(int k) {
  std::vector<int> images(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) images[static_cast<std::size_t>(i)] = i;
  return {images, std::vector<int>(static_cast<std::size_t>(k), 1)};
}

SignedPermutation SignedPermutation::from_signed_images(
    const std::vector<int>& images) {
  std::vector<int> idx, sg;
  for (int v : images) {
    if (v == 0) throw std::invalid_argument("signed image 0 is not allowed");
    idx.push_back(std::abs(v) - 1);
    sg.push_back(v < 0 ? -1 : 1);
  }
  return {idx, sg};
}

bool SignedPermutation::is_permutation() const {
  std::vector<bool> seen(images_.size(), false);
  for (int i : images_) {
    if (i < 0 || i >= size() || seen[static_cast<std::size_t>(i)]) return false;
    seen[static_cast<std::size_t>(i)] = true;
  }
  return true;
}

bool SignedPermutation::is_identity() const {
  for (int j = 0; j < size(); ++j)
    if (image(j) != j || sign(j) != 1) return false;
  return true;
}

SignedPermutation operator*(const SignedPermutation& a,
                            const SignedPermutation& b) {
  if (a.size() != b.size())
    throw ShapeMismatch("signed permutation product: sizes differ");
  std::vector<int> images(static_cast<std::size_t>(a.size()));
  std::vector<int> signs(images.size());
  for (int j = 0; j < a.size(); ++j) {
    const int bj = b.image(j);
    images[static_cast<std::size_t>(j)] = a.image(bj);
    signs[static_cast<std::size_t>(j)] = b.sign(j) * a.sign(bj);
  }
  return {images, signs};
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<int> images(images_.size()), signs(images_.size());
  for (int j = 0; j < size(); ++j) {
    images[static_cast<std::size_t>(image(j))] = j;
    signs[static_cast<std::size_t>(image(j))] = sign(j);
  }
  return {images, signs};
}

SignedPermutation SignedPermutation::power(int e) const {
  SignedPermutation base = e < 0 ? inverse() : *this;
  SignedPermutation out = identity(size());
  for (int i = 0; i < std::abs(e); ++i) out = base * out;
  return out;
}

IntVector SignedPermutation::apply(const IntVector& x) const {
  if (x.size() != size()) throw ShapeMismatch("signed permutation: wrong length");
  IntVector out(x.size());
  for (int j = 0; j < size(); ++j)
    out(image(j)) = sign(j) < 0 ? BigInt(-x(j)) : x(j);
  return out;
}

GoldenVector SignedPermutation::apply(const GoldenVector& x) const {
  if (x.size() != size()) throw ShapeMismatch("signed permutation: wrong length");
  GoldenVector out(x.size());
  for (int j = 0; j < size(); ++j) out(image(j)) = sign(j) < 0 ? -x(j) : x(j);
  return out;
}

IntVector SignedPermutation::cube_offset() const {
  IntVector n(size());
  for (int j = 0; j < size(); ++j) n(image(j)) = sign(j) < 0 ? 1 : 0;
  return n;
}

bool operator<(const SignedPermutation& a, const SignedPermutation& b) {
  if (a.images_ != b.images_) return a.images_ < b.images_;
  return a.signs_ < b.signs_;
}

bool preserves_gram(const SignedPermutation& g, const GoldenMatrix& gram) {
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      GoldenScalar v = gram(g.image(i), g.image(j));
      if (g.sign(i) * g.sign(j) < 0) v = -v;
      if (!(v == gram(i, j))) return false;
    }
  return true;
}

SignedPermutation evaluate_word(const std::vector<SignedPermutation>& gens,
                                const std::string& word) {
  if (gens.empty()) throw std::invalid_argument("relation without generators");
  SignedPermutation out = SignedPermutation::identity(gens.front().size());
  for (char c : word) {
    const int idx = c - 'a';
    if (idx < 0 || idx >= static_cast<int>(gens.size()))
      throw std::invalid_argument(std::string("relation uses unknown generator '") +
                                  c + "'");
    // The word is read left to right as a product, so the last letter acts first.
    out = out * gens[static_cast<std::size_t>(idx)];
  }
  return out;
}

ValidationReport validate(const ClusterSpec& c) {
  ValidationReport rep;
  auto issue = [&rep](const std::string& s) { rep.issues.push_back(s); };
  if (c.k <= 0) issue("k must be positive");
  if (c.n <= 0 || c.n > c.k) issue("n must lie in [1, k]");
  if (c.gram.rows() != c.k || c.gram.cols() != c.k) {
    issue("gram is not k x k");
    return rep;
  }
  for (int i = 0; i < c.k; ++i) {
    if (c.gram(i, i).sign() <= 0)
      issue("gram[" + std::to_string(i + 1) + "][" + std::to_string(i + 1) +
            "] is not positive");
    for (int j = i + 1; j < c.k; ++j)
      if (!(c.gram(i, j) == c.gram(j, i)))
        issue("gram not symmetric at (" + std::to_string(i + 1) + ", " +
              std::to_string(j + 1) + ")");
  }
  if (rep.ok() && rank(c.gram) != c.n)
    issue("gram rank " + std::to_string(rank(c.gram)) + " differs from n = " +
          std::to_string(c.n));
  bool gens_ok = true;
  for (std::size_t g = 0; g < c.generators.size(); ++g) {
    const auto& p = c.generators[g];
    const std::string tag = "generator " + std::to_string(g + 1);
    if (p.size() != c.k || !p.is_permutation()) {
      issue(tag + " is not a signed permutation of size k");
      gens_ok = false;
      continue;
    }
    for (int i = 0; i < c.k; ++i)
      for (int j = 0; j < c.k; ++j) {
        GoldenScalar v = c.gram(p.image(i), p.image(j));
        if (p.sign(i) * p.sign(j) < 0) v = -v;
        if (!(v == c.gram(i, j))) {
          issue(tag + " does not preserve gram at (" + std::to_string(i + 1) +
                ", " + std::to_string(j + 1) + ")");
          i = j = c.k;
        }
      }
  }
  if (gens_ok && !c.generators.empty()) {
    for (const auto& r : c.relations) {
      try {
        if (!evaluate_word(c.generators, r.word).power(r.power).is_identity())
          issue("relation (" + r.word + ")^" + std::to_string(r.power) +
                " = e fails");
      } catch (const std::invalid_argument& e) {
        issue(e.what());
      }
    }
  }
  if (c.embedding) {
    const Eigen::MatrixXd& e = *c.embedding;
    if (e.rows() != c.k || e.cols() != c.n) {
      issue("embedding is not k x n");
    } else {
      const Eigen::MatrixXd g = e * e.transpose();
      for (int i = 0; i < c.k; ++i)
        for (int j = 0; j < c.k; ++j)
          if (std::abs(g(i, j) - c.gram(i, j).to_double()) > 1e-9) {
            issue("embedding does not reproduce gram at (" +
                  std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
            i = j = c.k;
          }
    }
  }
  return rep;
}

GroupClosure close_group(const std::vector<SignedPermutation>& generators,
                         std::size_t bound) {
  if (generators.empty()) throw GroupClosureError("no generators");
  const int k = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != k || !g.is_permutation())
      throw GroupClosureError("generators are not signed permutations of equal size");
  GroupClosure out;
  std::set<SignedPermutation> seen;
  std::deque<SignedPermutation> queue;
  const auto e = SignedPermutation::identity(k);
  seen.insert(e);
  queue.push_back(e);
  while (!queue.empty()) {
    SignedPermutation cur = queue.front();
    queue.pop_front();
    out.elements.push_back(cur);
    for (const auto& g : generators) {
      SignedPermutation next = g * cur;
      if (seen.insert(next).second) {
        if (seen.size() > bound)
          throw GroupClosureError("group closure exceeds bound " +
                                  std::to_string(bound));
        queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

}  // namespace quasilattice
