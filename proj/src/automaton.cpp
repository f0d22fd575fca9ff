#include "imgb/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "imgb/errors.hpp"

namespace imgb {

StateWord free_reduce(StateWord w) {
  StateWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.state == Automaton::kIdentity) continue;
    if (!out.empty() && out.back().state == l.state && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

StateWord inverse_word(const StateWord& w) {
  StateWord out(w.rbegin(), w.rend());
  for (Letter& l : out) l.exponent = -l.exponent;
  return out;
}

Automaton::Automaton(unsigned degree) : degree_(degree) {
  if (degree < 2) throw InputError("automaton degree must be at least 2");
  names_.push_back("id");
  roots_.push_back(Permutation::identity(degree));
  sections_.emplace_back(degree);
}

std::size_t Automaton::declare(const std::string& name) {
  if (find(name)) throw InputError("duplicate state name: " + name);
  names_.push_back(name);
  roots_.push_back(Permutation::identity(degree_));
  sections_.emplace_back(degree_);
  return names_.size() - 1;
}

void Automaton::define(std::size_t state, Permutation root, std::vector<StateWord> sections) {
  if (state == kIdentity || state >= names_.size()) throw PreconditionError("define: bad state");
  if (root.degree() != degree_) throw InputError("root permutation has wrong degree");
  if (sections.size() != degree_) throw InputError("state needs exactly d sections");
  for (auto& s : sections) {
    for (const Letter& l : s)
      if (l.state >= names_.size() || (l.exponent != 1 && l.exponent != -1))
        throw InputError("section refers to an unknown state");
    s = free_reduce(std::move(s));
  }
  roots_[state] = std::move(root);
  sections_[state] = std::move(sections);
}

std::size_t Automaton::add_state(const std::string& name, Permutation root,
                                 std::vector<StateWord> sections) {
  std::size_t id = declare(name);
  define(id, std::move(root), std::move(sections));
  return id;
}

std::optional<std::size_t> Automaton::find(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return k;
  return std::nullopt;
}

std::size_t Automaton::at(std::string_view name) const {
  auto id = find(name);
  if (!id) throw InputError("unknown state: " + std::string(name));
  return *id;
}

std::vector<std::size_t> Automaton::generators() const {
  std::vector<std::size_t> out(names_.size() - 1);
  std::iota(out.begin(), out.end(), std::size_t{1});
  return out;
}

Permutation Automaton::root_of(const StateWord& w) const {
  Permutation acc = Permutation::identity(degree_);
  for (const Letter& l : w)
    acc = compose(l.exponent > 0 ? roots_[l.state] : roots_[l.state].inverse(), acc);
  return acc;
}

StateWord Automaton::section_of(const StateWord& w, unsigned letter) const {
  StateWord out;
  Point cur = letter;
  for (const Letter& l : w) {
    if (l.exponent > 0) {
      const auto& s = sections_[l.state][cur];
      out.insert(out.end(), s.begin(), s.end());
      cur = roots_[l.state](cur);
    } else {
      Point pre = roots_[l.state].inverse()(cur);
      auto s = inverse_word(sections_[l.state][pre]);
      out.insert(out.end(), s.begin(), s.end());
      cur = pre;
    }
  }
  return free_reduce(std::move(out));
}

Permutation Automaton::unroll(std::size_t state, unsigned level) const {
  if (state >= names_.size()) throw InputError("unroll: unknown state");
  return unroll(StateWord{Letter{state, 1}}, level);
}

Permutation Automaton::unroll(const StateWord& w, unsigned level) const {
  for (const Letter& l : w)
    if (l.state >= names_.size()) throw InputError("unroll: unknown state");
  std::map<MemoKey, Permutation> memo;
  return unroll_memo(free_reduce(w), level, memo);
}

Permutation Automaton::unroll_memo(const StateWord& w, unsigned level,
                                   std::map<MemoKey, Permutation>& memo) const {
  std::size_t size = 1;
  for (unsigned k = 0; k < level; ++k) size *= degree_;
  if (level == 0 || w.empty()) return Permutation::identity(size);
  MemoKey key{w, level};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const std::size_t below = size / degree_;
  const Permutation root = root_of(w);
  std::vector<Point> images(size);
  for (unsigned i = 0; i < degree_; ++i) {
    Permutation sub = unroll_memo(section_of(w, i), level - 1, memo);
    const std::size_t target = root(i) * below;
    for (std::size_t x = 0; x < below; ++x)
      images[i * below + x] = static_cast<Point>(target + sub(static_cast<Point>(x)));
  }
  Permutation result = Permutation::from_images(std::move(images));
  memo.emplace(std::move(key), result);
  return result;
}

std::string Automaton::word_to_string(const StateWord& w) const {
  if (w.empty()) return "id";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += '*';
    out += names_[w[k].state];
    if (w[k].exponent < 0) out += "^-1";
  }
  return out;
}

std::string Automaton::to_text() const {
  std::ostringstream os;
  for (std::size_t s = 1; s < names_.size(); ++s) {
    os << names_[s] << " = <";
    for (unsigned i = 0; i < degree_; ++i) os << (i ? ", " : "") << word_to_string(sections_[s][i]);
    os << '>';
    if (!roots_[s].is_identity()) os << ' ' << roots_[s].to_string();
    os << '\n';
  }
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct ParsedLine {
  std::string name;
  std::vector<std::string> sections;
  std::string perm;
};

}  // namespace

Automaton Automaton::parse(std::string_view text) {
  std::vector<ParsedLine> lines;
  std::istringstream is{std::string(text)};
  std::string raw;
  while (std::getline(is, raw)) {
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    auto lt = line.find('<');
    auto gt = line.find('>');
    if (eq == std::string::npos || lt == std::string::npos || gt == std::string::npos || lt < eq ||
        gt < lt)
      throw InputError("malformed automaton line: " + line);
    ParsedLine pl;
    pl.name = trim(std::string_view(line).substr(0, eq));
    if (pl.name.empty() || pl.name == "id") throw InputError("bad state name in: " + line);
    std::string inner = line.substr(lt + 1, gt - lt - 1);
    std::istringstream parts(inner);
    std::string part;
    while (std::getline(parts, part, ',')) pl.sections.push_back(trim(part));
    pl.perm = trim(std::string_view(line).substr(gt + 1));
    lines.push_back(std::move(pl));
  }
  if (lines.empty()) throw InputError("empty automaton");
  const std::size_t d = lines.front().sections.size();
  if (d < 2) throw InputError("automaton needs at least two sections per state");
  Automaton a(static_cast<unsigned>(d));
  for (const auto& pl : lines) a.declare(pl.name);

  auto parse_word = [&](const std::string& tok) {
    StateWord w;
    if (tok == "id" || tok == "1" || tok.empty()) return w;
    std::istringstream fs(tok);
    std::string factor;
    while (std::getline(fs, factor, '*')) {
      factor = trim(factor);
      int exponent = 1;
      if (auto caret = factor.find('^'); caret != std::string::npos) {
        std::string e = trim(std::string_view(factor).substr(caret + 1));
        if (e == "-1")
          exponent = -1;
        else if (e != "1")
          throw InputError("only exponents +-1 are supported: " + factor);
        factor = trim(std::string_view(factor).substr(0, caret));
      }
      if (factor == "id") continue;
      w.push_back(Letter{a.at(factor), exponent});
    }
    return w;
  };

  for (const auto& pl : lines) {
    if (pl.sections.size() != d) throw InputError("inconsistent section count for " + pl.name);
    std::vector<StateWord> sections;
    for (const auto& tok : pl.sections) sections.push_back(parse_word(tok));
    a.define(a.at(pl.name), Permutation::parse(pl.perm, d), std::move(sections));
  }
  return a;
}

std::optional<std::map<std::string, std::string>> match_up_to_renaming(const Automaton& a,
                                                                      const Automaton& b) {
  if (a.degree() != b.degree() || a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  std::vector<std::size_t> map(n, 0);  // a-state -> b-state
  std::vector<bool> used(n, false);
  used[0] = true;

  auto consistent = [&](std::size_t upto) {
    // States 1..upto are mapped; check those whose sections only reference mapped states.
    for (std::size_t s = 1; s <= upto; ++s) {
      if (a.root(s) != b.root(map[s])) return false;
      for (unsigned i = 0; i < a.degree(); ++i) {
        const auto& sa = a.sections(s)[i];
        const auto& sb = b.sections(map[s])[i];
        if (sa.size() != sb.size()) return false;
        for (std::size_t k = 0; k < sa.size(); ++k) {
          if (sa[k].exponent != sb[k].exponent) return false;
          if (sa[k].state <= upto && map[sa[k].state] != sb[k].state) return false;
        }
      }
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t s) -> bool {
    if (s == n) return consistent(n - 1);
    for (std::size_t t = 1; t < n; ++t) {
      if (used[t]) continue;
      map[s] = t;
      used[t] = true;
      if (consistent(s) && self(self, s + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  if (!search(search, 1)) return std::nullopt;
  std::map<std::string, std::string> out;
  for (std::size_t s = 1; s < n; ++s) out[a.name(s)] = b.name(map[s]);
  return out;
}

Automaton adding_machine(unsigned degree) {
  Automaton a(degree);
  std::size_t s = a.declare("a");
  std::vector<StateWord> sections(degree);
  sections[0] = {Letter{s, 1}};
  Cycle c(degree);
  std::iota(c.begin(), c.end(), Point{0});
  std::vector<Cycle> cs{c};
  a.define(s, Permutation::from_cycles(degree, cs), std::move(sections));
  return a;
}

Automaton portrait_automaton(const TreePortrait& portrait) {
  const TreeShape& shape = portrait.shape();
  Automaton a(shape.degree);
  // State per internal vertex; vertices at the last internal level have
  // identity sections.
  std::vector<std::vector<std::size_t>> ids(shape.height);
  std::size_t counter = 0;
  for (unsigned k = 0; k < shape.height; ++k)
    for (std::size_t v = 0; v < shape.level_size(k); ++v)
      ids[k].push_back(a.declare("v" + std::to_string(counter++)));
  for (unsigned k = 0; k < shape.height; ++k) {
    for (std::size_t v = 0; v < shape.level_size(k); ++v) {
      std::vector<StateWord> sections(shape.degree);
      if (k + 1 < shape.height)
        for (unsigned i = 0; i < shape.degree; ++i)
          sections[i] = {Letter{ids[k + 1][v * shape.degree + i], 1}};
      a.define(ids[k][v], portrait.vertex(k, v), std::move(sections));
    }
  }
  return a;
}

}  // namespace imgb
