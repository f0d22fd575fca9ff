#include "imgb/hurwitz.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <unordered_set>

#include "imgb/errors.hpp"
#include "imgb/group.hpp"

namespace imgb {

bool CriticalPortrait::riemann_hurwitz_valid() const {
  if (degree < 2) return false;
  unsigned total = 0;
  for (const auto& v : values) {
    if (v.empty()) return false;
    unsigned mass = 0;
    for (unsigned k : v) {
      if (k < 2 || k > degree) return false;
      mass += k;
      total += k - 1;
    }
    if (mass > degree) return false;
  }
  return total == degree - 1;
}

CriticalPortrait CriticalPortrait::normalized() const {
  CriticalPortrait out = *this;
  for (auto& v : out.values) std::sort(v.begin(), v.end(), std::greater<>());
  std::sort(out.values.begin(), out.values.end());
  return out;
}

CriticalPortrait CriticalPortrait::parse(std::string_view text) {
  CriticalPortrait p;
  std::string s(text);
  static const std::regex deg_re(R"(d\s*=\s*(\d+))");
  std::smatch m;
  if (!std::regex_search(s, m, deg_re)) throw InputError("portrait needs d=<degree>");
  p.degree = static_cast<unsigned>(std::stoul(m[1]));
  static const std::regex val_re(R"(\{([^}]*)\})");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), val_re); it != std::sregex_iterator(); ++it) {
    std::vector<unsigned> v;
    std::istringstream is((*it)[1].str());
    std::string tok;
    while (std::getline(is, tok, ',')) {
      tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
      if (tok.empty()) continue;
      v.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    p.values.push_back(std::move(v));
  }
  if (!p.riemann_hurwitz_valid()) throw InputError("portrait violates the Riemann-Hurwitz count: " + s);
  return p;
}

std::string CriticalPortrait::to_string() const {
  std::ostringstream os;
  os << "d=" << degree;
  for (std::size_t i = 0; i < values.size(); ++i) {
    os << "; v" << i + 1 << ":{";
    for (std::size_t k = 0; k < values[i].size(); ++k) os << (k ? "," : "") << values[i][k];
    os << '}';
  }
  return os.str();
}

std::vector<std::size_t> generator_cycle_type(unsigned degree, const std::vector<unsigned>& local_degrees) {
  std::vector<std::size_t> type;
  unsigned used = 0;
  for (unsigned k : local_degrees) {
    type.push_back(k);
    used += k;
  }
  if (used > degree) throw InputError("local degrees exceed the polynomial degree");
  for (unsigned k = used; k < degree; ++k) type.push_back(1);
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

namespace {

void partitions_at_least_two(unsigned remaining, unsigned max_part, std::vector<unsigned>& cur,
                             std::vector<std::vector<unsigned>>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (unsigned k = std::min(max_part, remaining); k >= 2; --k) {
    cur.push_back(k);
    partitions_at_least_two(remaining - k, k, cur, out);
    cur.pop_back();
  }
}

unsigned weight(const std::vector<unsigned>& v) {
  unsigned w = 0;
  for (unsigned k : v) w += k - 1;
  return w;
}

void choose_values(const std::vector<std::vector<unsigned>>& types, std::size_t from, unsigned remaining,
                   std::vector<std::vector<unsigned>>& cur, unsigned degree, std::vector<CriticalPortrait>& out) {
  if (remaining == 0) {
    out.push_back(CriticalPortrait{degree, cur}.normalized());
    return;
  }
  for (std::size_t t = from; t < types.size(); ++t) {
    const unsigned w = weight(types[t]);
    if (w > remaining) continue;
    cur.push_back(types[t]);
    choose_values(types, t, remaining - w, cur, degree, out);
    cur.pop_back();
  }
}

std::vector<Permutation> all_permutations(unsigned degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<Permutation> out;
  do out.push_back(Permutation::from_images(images));
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

std::vector<Permutation> of_cycle_type(const std::vector<Permutation>& all, const std::vector<std::size_t>& type) {
  std::vector<Permutation> out;
  for (const auto& p : all)
    if (p.cycle_type() == type) out.push_back(p);
  return out;
}

bool tuple_less(const HurwitzTuple& a, const HurwitzTuple& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::vector<std::uint64_t> order_census(const std::vector<Permutation>& elements) {
  std::vector<std::uint64_t> out;
  for (const auto& e : elements) out.push_back(e.order());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> type_census(const std::vector<Permutation>& elements) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& e : elements) out.push_back(e.cycle_type());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<CriticalPortrait> all_portraits(unsigned degree) {
  std::vector<std::vector<unsigned>> types;
  std::vector<unsigned> cur;
  partitions_at_least_two(degree, degree, cur, types);
  std::sort(types.begin(), types.end());
  std::vector<std::vector<unsigned>> chosen;
  std::vector<CriticalPortrait> out;
  choose_values(types, 0, degree - 1, chosen, degree, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.values < b.values; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.values == b.values; }),
            out.end());
  return out;
}

std::vector<HurwitzTuple> enumerate_tuples(const CriticalPortrait& input) {
  const CriticalPortrait portrait = input.normalized();
  const unsigned d = portrait.degree;
  if (d > kMaxHurwitzDegree) throw CapExceeded("tuple enumeration is limited to degree " + std::to_string(kMaxHurwitzDegree));
  if (!portrait.riemann_hurwitz_valid()) throw InputError("portrait violates the Riemann-Hurwitz count");
  const std::size_t k = portrait.values.size();

  Cycle full(d);
  std::iota(full.begin(), full.end(), Point{0});
  const std::vector<Cycle> cs{full};
  const Permutation c = Permutation::from_cycles(d, cs);

  const auto all = all_permutations(d);
  std::vector<std::vector<Permutation>> choices;
  std::vector<std::vector<std::size_t>> types;
  for (const auto& v : portrait.values) {
    types.push_back(generator_cycle_type(d, v));
    choices.push_back(of_cycle_type(all, types.back()));
  }

  // Canonical representative under conjugation by powers of c (the
  // centralizer of the fixed product).
  std::vector<Permutation> c_powers;
  for (unsigned j = 0; j < d; ++j) c_powers.push_back(c.pow(j));
  auto canonical = [&](const HurwitzTuple& t) {
    HurwitzTuple best = t;
    for (unsigned j = 1; j < d; ++j) {
      HurwitzTuple u;
      for (const auto& s : t) u.push_back(compose(c_powers[j], compose(s, c_powers[j].inverse())));
      if (tuple_less(u, best)) best = std::move(u);
    }
    return best;
  };

  std::vector<HurwitzTuple> out;
  std::vector<std::size_t> idx(k > 0 ? k - 1 : 0, 0);
  HurwitzTuple tuple(k);
  // odometer over the first k-1 choices
  while (true) {
    Permutation prefix = Permutation::identity(d);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      tuple[i] = choices[i][idx[i]];
      prefix = compose(tuple[i], prefix);
    }
    Permutation last = compose(c, prefix.inverse());
    if (last.cycle_type() == types[k - 1]) {
      tuple[k - 1] = last;
      out.push_back(canonical(tuple));
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  std::sort(out.begin(), out.end(), tuple_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool conjugate_in_symmetric_group(const std::vector<Permutation>& a_generators,
                                  const std::vector<Permutation>& b_elements) {
  if (a_generators.empty()) return true;
  const unsigned d = static_cast<unsigned>(a_generators.front().degree());
  std::unordered_set<Permutation, PermutationHash> b(b_elements.begin(), b_elements.end());
  for (const auto& x : all_permutations(d)) {
    const Permutation xi = x.inverse();
    bool ok = true;
    for (const auto& g : a_generators) {
      if (!b.contains(compose(x, compose(g, xi)))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

PortraitAnalysis portrait_determines_group(const CriticalPortrait& portrait) {
  PortraitAnalysis r;
  r.portrait = portrait.normalized();
  const auto tuples = enumerate_tuples(portrait);
  r.tuple_count = tuples.size();
  const unsigned d = r.portrait.degree;

  struct Entry {
    std::vector<Permutation> elements;
    std::vector<std::vector<std::size_t>> types;
    std::vector<std::uint64_t> orders;
  };
  std::vector<Entry> entries;
  std::vector<std::size_t> class_of(tuples.size());
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    PermGroup g(d, tuples[t]);
    auto elements = g.closure();
    std::sort(elements.begin(), elements.end());
    auto types = type_census(elements);
    auto orders = order_census(elements);

    std::size_t found = r.classes.size();
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
      const Entry& e = entries[c];
      if (e.types != types) continue;
      if (e.elements == elements || conjugate_in_symmetric_group(tuples[t], e.elements)) {
        found = c;
        break;
      }
    }
    if (found == r.classes.size()) {
      GroupClass gc;
      gc.representative = tuples[t];
      gc.order = elements.size();
      gc.blocks = block_lattice_at(g, 0);
      gc.primitive = gc.blocks.size() == 2 || d <= 2;
      r.classes.push_back(std::move(gc));
      entries.push_back(Entry{std::move(elements), std::move(types), std::move(orders)});
    }
    ++r.classes[found].tuple_count;
    class_of[t] = found;
  }

  std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::size_t> buckets;
  for (std::size_t c = 0; c < r.classes.size(); ++c) {
    auto key = std::make_pair(r.classes[c].order, entries[c].orders);
    auto [it, inserted] = buckets.emplace(key, buckets.size());
    r.classes[c].invariant_class = it->second;
  }
  r.invariant_class_count = buckets.size();
  r.determined = r.classes.size() == 1;
  return r;
}

}  // namespace imgb
