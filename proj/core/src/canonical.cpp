#include "polyadica/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace polyadica {
namespace {

using Colors = std::vector<int>;
using Certificate = std::vector<std::vector<std::vector<Elem>>>;

// Re-ranks arbitrary comparable keys to dense colours 0..k-1, preserving order.
template <class Key>
Colors rank(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colors out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  }
  return out;
}

int count_colors(const Colors& c) {
  if (c.empty()) return 0;
  return *std::max_element(c.begin(), c.end()) + 1;
}

class Search {
 public:
  Search(std::size_t n, const std::vector<TupleRelation>& rels) : n_(n), rels_(rels) {
    incidence_.resize(n);
    for (std::size_t r = 0; r < rels_.size(); ++r) {
      for (std::size_t t = 0; t < rels_[r].tuples.size(); ++t) {
        const auto& tuple = rels_[r].tuples[t];
        for (std::size_t pos = 0; pos < tuple.size(); ++pos) {
          incidence_[tuple[pos]].push_back({r, t, pos});
        }
      }
    }
  }

  Colors refine(Colors colors) const {
    int k = count_colors(colors);
    while (true) {
      std::vector<std::vector<long>> sig(n_);
      for (std::size_t x = 0; x < n_; ++x) {
        std::vector<std::vector<long>> parts;
        for (const auto& inc : incidence_[x]) {
          std::vector<long> part{static_cast<long>(inc.rel), static_cast<long>(inc.pos)};
          for (Elem e : rels_[inc.rel].tuples[inc.tuple]) part.push_back(colors[e]);
          parts.push_back(std::move(part));
        }
        std::sort(parts.begin(), parts.end());
        sig[x].push_back(colors[x]);
        for (const auto& p : parts) {
          sig[x].push_back(static_cast<long>(p.size()));
          sig[x].insert(sig[x].end(), p.begin(), p.end());
        }
      }
      Colors next = rank(sig);
      int nk = count_colors(next);
      colors = std::move(next);
      if (nk == k) return colors;
      k = nk;
    }
  }

  void run(const Colors& start) { explore(refine(start)); }

  const std::vector<Elem>& best_label() const { return best_label_; }

 private:
  struct Incidence {
    std::size_t rel;
    std::size_t tuple;
    std::size_t pos;
  };

  void explore(const Colors& colors) {
    if (static_cast<std::size_t>(count_colors(colors)) == n_) {
      std::vector<Elem> label(colors.begin(), colors.end());
      Certificate cert = certificate(label);
      if (!have_best_ || cert < best_cert_) {
        best_cert_ = std::move(cert);
        best_label_ = std::move(label);
        have_best_ = true;
      }
      return;
    }
    // First non-singleton cell in colour order.
    std::vector<int> sizes(count_colors(colors), 0);
    for (int c : colors) ++sizes[c];
    int target = 0;
    while (sizes[target] < 2) ++target;
    for (std::size_t x = 0; x < n_; ++x) {
      if (colors[x] != target) continue;
      Colors split(n_);
      for (std::size_t y = 0; y < n_; ++y) {
        split[y] = 2 * colors[y] + ((colors[y] == target && y != x) ? 1 : 0);
      }
      explore(refine(rank(split)));
    }
  }

  Certificate certificate(const std::vector<Elem>& label) const {
    Certificate cert;
    for (const auto& rel : relabel(rels_, label)) cert.push_back(rel.tuples);
    return cert;
  }

  std::size_t n_;
  const std::vector<TupleRelation>& rels_;
  std::vector<std::vector<Incidence>> incidence_;
  bool have_best_ = false;
  Certificate best_cert_;
  std::vector<Elem> best_label_;
};

}  // namespace

std::vector<TupleRelation> relabel(const std::vector<TupleRelation>& relations,
                                   const std::vector<Elem>& label) {
  std::vector<TupleRelation> out;
  out.reserve(relations.size());
  for (const auto& rel : relations) {
    TupleRelation r{rel.arity, {}};
    r.tuples.reserve(rel.tuples.size());
    for (const auto& t : rel.tuples) {
      std::vector<Elem> mapped(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = label[t[i]];
      r.tuples.push_back(std::move(mapped));
    }
    std::sort(r.tuples.begin(), r.tuples.end());
    r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Elem> canonical_labeling(std::size_t n, const std::vector<TupleRelation>& relations,
                                     const std::vector<int>& colors) {
  if (n == 0) return {};
  Colors start = colors.empty() ? Colors(n, 0) : rank(colors);
  Search search(n, relations);
  search.run(start);
  return search.best_label();
}

}  // namespace polyadica
