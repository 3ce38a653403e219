#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace lerw {

// A finite path gamma : {-m, ..., n} -> V with a designated origin index 0.
// Vertices are encoded integer ids.
struct IndexedPath {
  std::vector<std::int64_t> vertices;  // vertices[k] = gamma(k - neg)
  std::int64_t neg = 0;                // m >= 0

  std::int64_t length() const { return static_cast<std::int64_t>(vertices.size()); }
  std::int64_t at(std::int64_t i) const { return vertices[i + neg]; }  // i in [-m, n]
};

using SimplePath = std::vector<std::int64_t>;

// Chronological loop-erasure:
//   LE_0 = gamma(-m);  LE_{i+1} = gamma(j_i + 1),  j_i = max{j : gamma(j) = LE_i}.
// The global last-occurrence table makes the recursion a chain of jumps, so
// this is the paper's definition verbatim, in O(length).
inline SimplePath loop_erase(const IndexedPath& gamma) {
  if (gamma.vertices.empty()) throw std::invalid_argument("loop_erase: empty path");
  std::unordered_map<std::int64_t, std::size_t> last;
  for (std::size_t j = 0; j < gamma.vertices.size(); ++j) last[gamma.vertices[j]] = j;
  SimplePath out;
  std::size_t pos = 0;
  for (;;) {
    out.push_back(gamma.vertices[pos]);
    std::size_t j = last[gamma.vertices[pos]];
    if (j + 1 >= gamma.vertices.size()) break;
    pos = j + 1;
  }
  return out;
}

// Continued loop-erasure LE+: the suffix of LE starting at the first entry
// whose last occurrence lies at a nonnegative path index. With no negative
// part, LE+ == LE.
inline SimplePath loop_erase_continued(const IndexedPath& gamma) {
  if (gamma.vertices.empty()) throw std::invalid_argument("loop_erase: empty path");
  std::unordered_map<std::int64_t, std::size_t> last;
  for (std::size_t j = 0; j < gamma.vertices.size(); ++j) last[gamma.vertices[j]] = j;
  SimplePath out;
  std::size_t pos = 0;
  bool started = false;
  for (;;) {
    std::size_t j = last[gamma.vertices[pos]];
    // j as a path index is j - neg; j_i >= 0 iff j >= neg
    if (!started && static_cast<std::int64_t>(j) >= gamma.neg) started = true;
    if (started) out.push_back(gamma.vertices[pos]);
    if (j + 1 >= gamma.vertices.size()) break;
    pos = j + 1;
  }
  return out;
}

// Last-occurrence lookup strategies for the online eraser. Entries are never
// eagerly cleared on truncation; a stored position is trusted only if the
// held path still has that vertex there.

class HashPosMap {
 public:
  std::int64_t get(std::int64_t v) const {
    auto it = map_.find(v);
    return it == map_.end() ? -1 : it->second;
  }
  void put(std::int64_t v, std::int64_t pos) { map_[v] = pos; }
  void clear() { map_.clear(); }

 private:
  std::unordered_map<std::int64_t, std::int64_t> map_;
};

// Dense table indexed by encoded vertex; for torus walks where vertex ids
// are in [0, N^d).
class DensePosMap {
 public:
  explicit DensePosMap(std::int64_t universe) : table_(universe, -1) {}
  std::int64_t get(std::int64_t v) const { return table_[v]; }
  void put(std::int64_t v, std::int64_t pos) { table_[v] = pos; }
  void clear() { std::fill(table_.begin(), table_.end(), -1); }

 private:
  std::vector<std::int64_t> table_;
};

// Online chronological loop-eraser. On a revisit the held path is truncated
// back to the prior occurrence; for any completed prefix this equals the
// batch recursion above. Sketch: both outputs are determined by the suffix
// of the prefix after the last visit to its start vertex, inductively down
// the path, and truncate-to-first-occurrence maintains exactly that suffix
// structure. The quadratic transcription in oracle.hpp serves as the test
// oracle for this equivalence.
template <class PosMap>
class OnlineLoopEraser {
 public:
  template <class... Args>
  explicit OnlineLoopEraser(Args&&... args) : pos_(std::forward<Args>(args)...) {}

  void push(std::int64_t v) {
    std::int64_t p = pos_.get(v);
    if (p >= 0 && p < static_cast<std::int64_t>(path_.size()) && path_[p] == v) {
      path_.resize(p + 1);  // keep v at its prior position
    } else {
      path_.push_back(v);
      pos_.put(v, static_cast<std::int64_t>(path_.size()) - 1);
    }
  }

  std::int64_t size() const { return static_cast<std::int64_t>(path_.size()); }
  const SimplePath& path() const { return path_; }

  void reset() {
    path_.clear();
    pos_.clear();
  }

 private:
  SimplePath path_;
  PosMap pos_;
};

inline std::int64_t le_length(const OnlineLoopEraser<HashPosMap>& e) { return e.size(); }

// Checked wrapper: rejects pushes that are not graph-adjacent to the current
// endpoint. Used where inputs are untrusted; the hot loops skip the check.
template <class PosMap, class AdjacentFn>
class CheckedLoopEraser {
 public:
  template <class... Args>
  CheckedLoopEraser(AdjacentFn adj, Args&&... args)
      : adj_(adj), inner_(std::forward<Args>(args)...) {}

  void push(std::int64_t v) {
    if (inner_.size() > 0 && !adj_(inner_.path().back(), v))
      throw std::invalid_argument("push: vertex not adjacent to path endpoint");
    inner_.push(v);
  }
  std::int64_t size() const { return inner_.size(); }
  const SimplePath& path() const { return inner_.path(); }

 private:
  AdjacentFn adj_;
  OnlineLoopEraser<PosMap> inner_;
};

}  // namespace lerw
