#include "imgb/conservative.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "imgb/errors.hpp"
#include "imgb/group.hpp"

namespace imgb {

std::vector<Permutation> CycleSystem::generators() const {
  std::vector<Permutation> out;
  for (const auto& c : cycles) {
    const std::vector<Cycle> one{c};
    out.push_back(Permutation::from_cycles(degree, one));
  }
  return out;
}

namespace {

bool connected(unsigned n, const std::vector<Edge>& edges) {
  if (n == 0) return true;
  std::vector<std::vector<Point>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<Point> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    Point u = stack.back();
    stack.pop_back();
    for (Point v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

}  // namespace

void CycleSystem::validate() const {
  if (degree < 2) throw InputError("cycle system degree must be at least 2");
  unsigned total = 0;
  for (const auto& c : cycles) {
    if (c.size() < 2) throw InputError("every cycle needs length at least 2");
    Cycle sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("repeated point in a cycle");
    if (sorted.back() >= degree) throw InputError("cycle point out of range");
    total += static_cast<unsigned>(c.size()) - 1;
  }
  if (total != degree - 1) throw InputError("cycle lengths violate the conservative count");
  std::vector<Edge> edges;
  for (const auto& c : cycles)
    for (std::size_t k = 0; k + 1 < c.size(); ++k) edges.emplace_back(c[k], c[k + 1]);
  if (!connected(degree, edges)) throw InputError("cycle system is not connected");
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      std::size_t shared = 0;
      for (Point x : cycles[i])
        if (std::find(cycles[j].begin(), cycles[j].end(), x) != cycles[j].end()) ++shared;
      if (shared > 1) throw InputError("two cycles share more than one point");
    }
}

CycleSystem CycleSystem::parse(std::string_view text, unsigned degree) {
  CycleSystem s;
  s.degree = degree;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Permutation p = Permutation::parse(line, degree);
    auto cs = p.cycles();
    if (cs.size() != 1) throw InputError("each line must hold exactly one cycle: " + line);
    s.cycles.push_back(cs.front());
  }
  s.validate();
  return s;
}

std::string CycleSystem::to_string() const {
  std::ostringstream os;
  for (const auto& c : cycles) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k) os << (k ? " " : "") << c[k] + 1;
    os << ")\n";
  }
  return os.str();
}

GammaGraphs gamma_graphs(const CycleSystem& system) {
  system.validate();
  GammaGraphs g;
  for (std::size_t i = 0; i < system.cycles.size(); ++i) {
    const Cycle& c = system.cycles[i];
    const std::size_t len = c.size();
    const std::size_t top = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
    for (std::size_t k = 0; k < len; ++k) {
      Edge e{c[k], c[(k + 1) % len]};
      g.gamma.push_back(e);
      g.gamma_cycle.push_back(i);
      if (k != top) {
        g.gamma_prime.push_back(e);
        g.gamma_prime_cycle.push_back(i);
      }
    }
  }
  g.gamma_connected = connected(system.degree, g.gamma);
  g.gamma_prime_connected = connected(system.degree, g.gamma_prime);
  g.faces = 2 - static_cast<long>(system.degree) + static_cast<long>(g.gamma_prime.size());
  g.tree = g.gamma_prime_connected && g.gamma_prime.size() + 1 == system.degree;
  return g;
}

namespace {

long position_in(const Cycle& c, Point x) {
  auto it = std::find(c.begin(), c.end(), x);
  return it == c.end() ? -1 : static_cast<long>(it - c.begin());
}

bool moves(const CycleSystem& s, std::size_t cycle, Point x) { return position_in(s.cycles[cycle], x) >= 0; }

WitnessStep inverse(WitnessStep s) {
  s.exponent = -s.exponent;
  return s;
}

}  // namespace

Permutation evaluate(const CycleSystem& system, const WitnessWord& word) {
  const auto gens = system.generators();
  Permutation acc = Permutation::identity(system.degree);
  for (const auto& step : word) acc = compose(gens.at(step.cycle).pow(step.exponent), acc);
  return acc;
}

std::size_t witness_length_bound(const CycleSystem& system) { return 3 * system.cycles.size() + 2; }

WitnessWord witness(const CycleSystem& system, Point a, Point b, Point c) {
  if (a == b || c == b) throw PreconditionError("witness needs a != b and c != b");
  const unsigned d = system.degree;
  if (a >= d || b >= d || c >= d) throw PreconditionError("witness point out of range");
  const GammaGraphs g = gamma_graphs(system);

  // Shortest path a -> c in the reduced graph, remembering each edge's cycle
  // and direction.
  struct Arc {
    Point to;
    std::size_t cycle;
  };
  std::vector<std::vector<Arc>> adj(d);
  for (std::size_t e = 0; e < g.gamma_prime.size(); ++e) {
    auto [u, v] = g.gamma_prime[e];
    adj[u].push_back({v, g.gamma_prime_cycle[e]});
    adj[v].push_back({u, g.gamma_prime_cycle[e]});
  }
  std::vector<long> prev(d, -1);
  std::vector<std::size_t> via(d, 0);
  std::vector<Point> queue{a};
  prev[a] = a;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const Arc& arc : adj[queue[k]])
      if (prev[arc.to] < 0) {
        prev[arc.to] = queue[k];
        via[arc.to] = arc.cycle;
        queue.push_back(arc.to);
      }
  std::vector<Point> vertices{c};
  std::vector<std::size_t> cycles_used;
  for (Point x = c; x != a; x = static_cast<Point>(prev[x])) {
    cycles_used.push_back(via[x]);
    vertices.push_back(static_cast<Point>(prev[x]));
  }
  std::reverse(vertices.begin(), vertices.end());
  std::reverse(cycles_used.begin(), cycles_used.end());

  // Group consecutive edges of one cycle into a power of it.
  WitnessWord path;
  for (std::size_t k = 0; k < cycles_used.size();) {
    const std::size_t cyc = cycles_used[k];
    const Point from = vertices[k];
    std::size_t j = k;
    while (j < cycles_used.size() && cycles_used[j] == cyc) ++j;
    const Point to = vertices[j];
    const Cycle& cy = system.cycles[cyc];
    const long len = static_cast<long>(cy.size());
    long e = (position_in(cy, to) - position_in(cy, from) + len) % len;
    if (2 * e > len) e -= len;
    path.push_back({cyc, e});
    k = j;
  }
  if (path.empty()) return path;

  long k = -1;
  for (long i = static_cast<long>(path.size()) - 1; i >= 0; --i)
    if (moves(system, path[static_cast<std::size_t>(i)].cycle, b)) {
      k = i;
      break;
    }
  if (k < 0) return path;
  const auto uk = static_cast<std::size_t>(k);

  if (path.size() == 1) {
    // One cycle: detour through another cycle sharing a point alpha.
    const std::size_t c0 = path[0].cycle;
    std::size_t other = system.cycles.size();
    Point alpha = 0;
    for (std::size_t i = 0; i < system.cycles.size() && other == system.cycles.size(); ++i) {
      if (i == c0) continue;
      for (Point x : system.cycles[i])
        if (moves(system, c0, x)) {
          other = i;
          alpha = x;
          break;
        }
    }
    if (other == system.cycles.size()) throw PreconditionError("witness needs at least two cycles");
    const Cycle& cy = system.cycles[c0];
    const long len = static_cast<long>(cy.size());
    const long j = (position_in(cy, alpha) - position_in(cy, b) + len) % len;
    return {{c0, j}, {other, 1}, path[0], {other, -1}, {c0, -j}};
  }

  WitnessWord out;
  if (uk > 0 && moves(system, path[uk - 1].cycle, b)) {
    // b is the junction of steps k-1 and k.
    for (std::size_t i = 0; i <= uk; ++i) out.push_back(path[i]);
    out.push_back(inverse(path[uk - 1]));
    for (std::size_t i = uk + 1; i < path.size(); ++i) out.push_back(path[i]);
  } else if (uk > 0) {
    for (std::size_t i = 0; i + 1 < uk; ++i) out.push_back(path[i]);
    out.push_back(inverse(path[uk]));
    out.push_back(path[uk - 1]);
    out.push_back(path[uk]);
    for (std::size_t i = uk + 1; i < path.size(); ++i) out.push_back(path[i]);
  } else {
    out.push_back(path[0]);
    out.push_back(path[1]);
    out.push_back(inverse(path[0]));
    for (std::size_t i = 2; i < path.size(); ++i) out.push_back(path[i]);
  }
  return out;
}

bool check_doubly_transitive(const CycleSystem& system) {
  if (system.cycles.size() < 2) throw PreconditionError("double transitivity check needs at least two cycles");
  return PermGroup(system.degree, system.generators()).is_doubly_transitive();
}

CycleSystem random_cycle_system(unsigned degree, unsigned min_cycles, std::mt19937_64& rng) {
  if (degree < 3 || min_cycles < 1 || min_cycles > degree - 1)
    throw PreconditionError("random_cycle_system: need degree >= 3 and 1 <= min_cycles <= degree - 1");
  // Split degree - 1 into weights d_i - 1 >= 1, with at least min_cycles parts.
  std::vector<unsigned> weights;
  for (;;) {
    weights.clear();
    unsigned left = degree - 1;
    while (left > 0) {
      unsigned w = 1 + static_cast<unsigned>(rng() % left);
      weights.push_back(w);
      left -= w;
    }
    if (weights.size() >= min_cycles) break;
  }
  std::vector<Point> labels(degree);
  std::iota(labels.begin(), labels.end(), Point{0});
  for (std::size_t k = labels.size(); k > 1; --k) std::swap(labels[k - 1], labels[rng() % k]);

  CycleSystem s;
  s.degree = degree;
  std::size_t next = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    Cycle c;
    if (i == 0) {
      c.push_back(labels[next++]);
    } else {
      c.push_back(labels[rng() % next]);  // attach to an existing point
    }
    for (unsigned k = 0; k < weights[i]; ++k) c.push_back(labels[next++]);
    for (std::size_t k = c.size(); k > 1; --k) std::swap(c[k - 1], c[rng() % k]);
    s.cycles.push_back(std::move(c));
  }
  s.validate();
  return s;
}

}  // namespace imgb
