#include "orbitrank/permgroup.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

#include "orbitrank/errors.hpp"

namespace orbitrank {

namespace {
std::uint64_t g_max_group_order = 20000;
}

std::uint64_t max_group_order() { return g_max_group_order; }
void set_max_group_order(std::uint64_t budget) { g_max_group_order = budget; }

Perm::Perm(int degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), 0);
}

Perm Perm::from_images(std::vector<int> images) {
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 0 || v >= static_cast<int>(images.size()) || seen[v])
      throw Error(Err::ValidationError, "image list is not a permutation");
    seen[v] = true;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(std::string_view text, int degree) {
  Perm p(degree);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(')
      throw Error(Err::SyntaxError, "expected `(` in cycle notation");
    ++i;
    std::vector<int> cycle;
    skip();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(Err::SyntaxError, "expected a point in cycle notation");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v >= degree)
        throw Error(Err::ValidationError,
                    "point " + std::to_string(v) + " beyond degree " +
                        std::to_string(degree));
      cycle.push_back(v);
      skip();
      if (i < text.size() && text[i] == ',') { ++i; skip(); }
    }
    if (i >= text.size())
      throw Error(Err::SyntaxError, "unterminated cycle");
    ++i;  // ')'
    std::set<int> uniq(cycle.begin(), cycle.end());
    if (uniq.size() != cycle.size())
      throw Error(Err::ValidationError, "repeated point in a cycle");
    for (std::size_t j = 0; j + 1 < cycle.size(); ++j)
      p.img_[cycle[j]] = cycle[j + 1];
    if (cycle.size() > 1) p.img_[cycle.back()] = cycle.front();
    skip();
  }
  return p;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<int> inv(img_.size());
  for (int i = 0; i < degree(); ++i) inv[img_[i]] = i;
  return from_images(std::move(inv));
}

std::string Perm::cycles() const {
  std::string out;
  std::vector<bool> seen(img_.size(), false);
  for (int start = 0; start < degree(); ++start) {
    if (seen[start] || img_[start] == start) continue;
    out += "(";
    int cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = true;
      if (!first) out += " ";
      first = false;
      out += std::to_string(cur);
      cur = img_[cur];
    }
    out += ")";
  }
  if (out.empty()) out = "()";
  return out;
}

Perm compose(const Perm& a, const Perm& b) {
  std::vector<int> img(a.degree());
  for (int i = 0; i < a.degree(); ++i) img[i] = a(b(i));
  return Perm::from_images(std::move(img));
}

std::vector<Perm> closure(int degree, const std::vector<Perm>& gens) {
  for (const Perm& g : gens)
    if (g.degree() != degree)
      throw Error(Err::ValidationError, "generator degree mismatch");
  std::set<Perm> done;
  std::deque<Perm> todo;
  done.insert(Perm(degree));
  todo.push_back(Perm(degree));
  while (!todo.empty()) {
    Perm cur = std::move(todo.front());
    todo.pop_front();
    for (const Perm& g : gens) {
      Perm next = compose(cur, g);
      if (done.insert(next).second) {
        if (done.size() > g_max_group_order)
          throw Error(Err::BudgetExceeded,
                      "closure exceeds max_group_order = " +
                          std::to_string(g_max_group_order));
        todo.push_back(std::move(next));
      }
    }
  }
  return {done.begin(), done.end()};
}

std::vector<Perm> reduce_generators(int degree,
                                    const std::vector<Perm>& elements) {
  std::vector<Perm> gens;
  std::vector<Perm> current{Perm(degree)};
  for (const Perm& e : elements) {
    if (e.is_identity()) continue;
    if (contains(current, e)) continue;
    gens.push_back(e);
    current = closure(degree, gens);
    if (current.size() == elements.size()) break;
  }
  return gens;
}

bool contains(const std::vector<Perm>& sorted_elements, const Perm& p) {
  return std::binary_search(sorted_elements.begin(), sorted_elements.end(), p);
}

ChainGroup ChainGroup::make(int degree,
                            std::vector<std::vector<Perm>> level_gens) {
  if (degree < 1) throw Error(Err::ValidationError, "degree must be >= 1");
  if (level_gens.empty())
    throw Error(Err::ChainNotTrivialAtEnd, "empty chain");
  ChainGroup g;
  g.degree_ = degree;
  g.gens_ = std::move(level_gens);
  for (auto& gens : g.gens_) g.elements_.push_back(closure(degree, gens));
  for (int n = 1; n < g.levels(); ++n) {
    if (!std::includes(g.elements_[n - 1].begin(), g.elements_[n - 1].end(),
                       g.elements_[n].begin(), g.elements_[n].end()))
      throw Error(Err::NotASubgroup,
                  "level " + std::to_string(n) +
                      " is not contained in level " + std::to_string(n - 1));
  }
  if (g.elements_.back().size() != 1)
    throw Error(Err::ChainNotTrivialAtEnd,
                "last level has order " +
                    std::to_string(g.elements_.back().size()));
  return g;
}

const std::vector<Perm>& ChainGroup::gens(int n) const {
  if (n < 0 || n >= levels())
    throw Error(Err::IndexOutOfRange, "chain level " + std::to_string(n));
  return gens_[n];
}

const std::vector<Perm>& ChainGroup::elements(int n) const {
  if (n < 0 || n >= levels())
    throw Error(Err::IndexOutOfRange, "chain level " + std::to_string(n));
  return elements_[n];
}

std::uint64_t ChainGroup::order(int n) const { return elements(n).size(); }

CosetSpace cosets_of(const std::vector<Perm>& ambient,
                     const std::vector<Perm>& subgroup) {
  CosetSpace out;
  out.coset_of.reserve(ambient.size() * 2);
  for (const Perm& g : ambient) {
    if (out.coset_of.count(g)) continue;
    // g is the least unassigned element, hence the least member of its coset.
    int idx = static_cast<int>(out.reps.size());
    out.reps.push_back(g);
    for (const Perm& u : subgroup) out.coset_of.emplace(compose(g, u), idx);
  }
  return out;
}

CosetSpace cosets(const ChainGroup& g, int k) {
  if (k < 0 || k >= g.levels())
    throw Error(Err::IndexOutOfRange, "coset level " + std::to_string(k));
  return cosets_of(g.elements(0), g.elements(k));
}

namespace {

// Orbit partition of a generator set acting on coset indices.
std::vector<std::vector<int>> orbit_partition(const CosetSpace& space,
                                              const std::vector<Perm>& gens) {
  const int n = space.size();
  std::vector<Perm> movers = gens;
  for (const Perm& g : gens) movers.push_back(g.inverse());
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> blocks;
  for (int start = 0; start < n; ++start) {
    if (owner[start] >= 0) continue;
    int label = static_cast<int>(blocks.size());
    std::vector<int> orbit{start};
    owner[start] = label;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const Perm& g : movers) {
        int next = space.act(g, orbit[head]);
        if (owner[next] < 0) {
          owner[next] = label;
          orbit.push_back(next);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    blocks.push_back(std::move(orbit));
  }
  return blocks;
}

std::vector<Perm> embed(const Perm& p, int offset, int total_degree) {
  std::vector<int> img(total_degree);
  std::iota(img.begin(), img.end(), 0);
  for (int i = 0; i < p.degree(); ++i) img[offset + i] = offset + p(i);
  return {Perm::from_images(std::move(img))};
}

Perm embed_one(const Perm& p, int offset, int total_degree) {
  return embed(p, offset, total_degree)[0];
}

}  // namespace

EqSeq coset_eqseq(const ChainGroup& g, int k) {
  CosetSpace space = cosets(g, k);
  std::vector<int> points(space.size());
  std::iota(points.begin(), points.end(), 0);
  std::vector<std::vector<std::vector<int>>> partitions;
  for (int n = 0; n < g.levels(); ++n)
    partitions.push_back(orbit_partition(space, g.gens(n)));
  return EqSeq::make(std::move(points), std::move(partitions));
}

Ordinal rho_k(const ChainGroup& g, int k) {
  return orbit_tree(coset_eqseq(g, k)).tree.tree_rank();
}

Ordinal rho(const ChainGroup& g) {
  Ordinal best;
  for (int k = 0; k < g.levels(); ++k) {
    Ordinal r = rho_k(g, k);
    if (r > best) best = r;
  }
  return best;
}

ChainGroup subgroup_chain(const ChainGroup& g, const std::vector<Perm>& h_gens) {
  std::vector<Perm> h = closure(g.degree(), h_gens);
  if (!std::includes(g.elements(0).begin(), g.elements(0).end(), h.begin(),
                     h.end()))
    throw Error(Err::NotASubgroup, "given generators leave the group");
  std::vector<std::vector<Perm>> level_gens;
  for (int n = 0; n < g.levels(); ++n) {
    std::vector<Perm> meet;
    std::set_intersection(h.begin(), h.end(), g.elements(n).begin(),
                          g.elements(n).end(), std::back_inserter(meet));
    level_gens.push_back(reduce_generators(g.degree(), meet));
  }
  return ChainGroup::make(g.degree(), std::move(level_gens));
}

ChainGroup quotient_chain(const ChainGroup& g, const std::vector<Perm>& n_gens) {
  std::vector<Perm> nsub = closure(g.degree(), n_gens);
  if (!std::includes(g.elements(0).begin(), g.elements(0).end(), nsub.begin(),
                     nsub.end()))
    throw Error(Err::NotASubgroup, "given generators leave the group");
  for (const Perm& c : g.gens(0)) {
    Perm cinv = c.inverse();
    for (const Perm& x : nsub)
      if (!contains(nsub, compose(compose(c, x), cinv)))
        throw Error(Err::NotNormal, "conjugation by " + c.cycles() +
                                        " moves " + x.cycles() + " out");
  }
  CosetSpace space = cosets_of(g.elements(0), nsub);
  const int deg = space.size();
  auto image_of = [&](const Perm& p) {
    std::vector<int> img(deg);
    for (int i = 0; i < deg; ++i) img[i] = space.act(p, i);
    return Perm::from_images(std::move(img));
  };
  std::vector<std::vector<Perm>> level_gens;
  for (int n = 0; n < g.levels(); ++n) {
    std::vector<Perm> gens;
    for (const Perm& p : g.gens(n)) gens.push_back(image_of(p));
    level_gens.push_back(std::move(gens));
  }
  return ChainGroup::make(deg, std::move(level_gens));
}

ChainGroup product_chain(const ChainGroup& a, const ChainGroup& b) {
  const int deg = a.degree() + b.degree();
  const int levels = std::max(a.levels(), b.levels());
  std::vector<std::vector<Perm>> level_gens(levels);
  for (int n = 0; n < levels; ++n) {
    if (n < a.levels())
      for (const Perm& p : a.gens(n))
        level_gens[n].push_back(embed_one(p, 0, deg));
    if (n < b.levels())
      for (const Perm& p : b.gens(n))
        level_gens[n].push_back(embed_one(p, a.degree(), deg));
  }
  return ChainGroup::make(deg, std::move(level_gens));
}

ChainGroup staggered_product(const std::vector<ChainGroup>& factors) {
  if (factors.empty())
    throw Error(Err::ValidationError, "staggered product needs a factor");
  int deg = 0;
  int max_top = 0;
  for (const ChainGroup& f : factors) {
    deg += f.degree();
    max_top = std::max(max_top, f.top_index());
  }
  const int count = static_cast<int>(factors.size());
  const int top = std::max(max_top, count);
  std::vector<std::vector<Perm>> level_gens(top + 1);
  for (int n = 0; n <= top; ++n) {
    int offset = 0;
    for (int i = 0; i < count; ++i) {
      const ChainGroup& f = factors[i];
      int source = (i < n) ? std::min(n, f.top_index()) : 0;
      for (const Perm& p : f.gens(source))
        level_gens[n].push_back(embed_one(p, offset, deg));
      offset += f.degree();
    }
  }
  return ChainGroup::make(deg, std::move(level_gens));
}

ChainGroup power_chain(const ChainGroup& g, int copies) {
  if (copies < 1) throw Error(Err::ValidationError, "copies must be >= 1");
  return staggered_product(std::vector<ChainGroup>(copies, g));
}

ChainGroup wreath_truncation(int b, const ChainGroup& g) {
  if (b < 1) throw Error(Err::ValidationError, "block count must be >= 1");
  const int d = g.degree();
  const int deg = b * d;

  auto block_embed = [&](const Perm& p, int block) {
    return embed_one(p, block * d, deg);
  };
  std::vector<int> rot_img(deg);
  for (int block = 0; block < b; ++block)
    for (int i = 0; i < d; ++i) rot_img[block * d + i] = ((block + 1) % b) * d + i;
  Perm rotation = Perm::from_images(std::move(rot_img));

  std::vector<std::vector<Perm>> level_gens;
  std::vector<Perm> whole;
  whole.push_back(rotation);
  for (const Perm& p : g.gens(0)) whole.push_back(block_embed(p, 0));
  level_gens.push_back(std::move(whole));

  const int top = std::max(b, g.top_index());
  for (int n = 0; n <= top; ++n) {
    // level n+1: blocks below min(n, b) constrained to the level-n subgroup
    std::vector<Perm> gens;
    const int constrained = std::min(n, b);
    for (int block = 0; block < b; ++block) {
      int source = (block < constrained) ? std::min(n, g.top_index()) : 0;
      for (const Perm& p : g.gens(source)) gens.push_back(block_embed(p, block));
    }
    level_gens.push_back(std::move(gens));
  }
  return ChainGroup::make(deg, std::move(level_gens));
}

InterleaveResult interleave_chains(const ChainGroup& a, const ChainGroup& b) {
  if (a.degree() != b.degree() || !(a.elements(0) == b.elements(0)))
    throw Error(Err::NoInterleaving, "chains start at different groups");
  InterleaveResult out;
  std::vector<std::vector<Perm>> level_gens;
  int i = 0, j = 0;
  auto push_a = [&] {
    out.a_slots.push_back(static_cast<int>(level_gens.size()));
    level_gens.push_back(a.gens(i));
    ++i;
  };
  auto push_b = [&] {
    out.b_slots.push_back(static_cast<int>(level_gens.size()));
    level_gens.push_back(b.gens(j));
    ++j;
  };
  while (i < a.levels() || j < b.levels()) {
    if (i >= a.levels()) { push_b(); continue; }
    if (j >= b.levels()) { push_a(); continue; }
    const auto& ea = a.elements(i);
    const auto& eb = b.elements(j);
    if (ea == eb) {
      out.a_slots.push_back(static_cast<int>(level_gens.size()));
      out.b_slots.push_back(static_cast<int>(level_gens.size()));
      level_gens.push_back(a.gens(i));
      ++i;
      ++j;
    } else if (std::includes(ea.begin(), ea.end(), eb.begin(), eb.end())) {
      push_a();  // ea is the bigger one
    } else if (std::includes(eb.begin(), eb.end(), ea.begin(), ea.end())) {
      push_b();
    } else {
      throw Error(Err::NoInterleaving,
                  "levels " + std::to_string(i) + " and " + std::to_string(j) +
                      " are inclusion-incomparable");
    }
  }
  out.merged = ChainGroup::make(a.degree(), std::move(level_gens));
  return out;
}

namespace {

// Orbit trees of the two chains on the same coset space use identical
// classes when a chain member equals a merged member; match nodes by class
// least-members.
EmbeddingResult slot_isomorphism(const ChainGroup& chain,
                                 const std::vector<int>& slots,
                                 const CosetSpace& space,
                                 const OrbitTree& merged_tree,
                                 const EqSeq& merged_seq) {
  std::vector<int> points(space.size());
  std::iota(points.begin(), points.end(), 0);
  std::vector<std::vector<std::vector<int>>> partitions;
  for (int n = 0; n < chain.levels(); ++n)
    partitions.push_back(orbit_partition(space, chain.gens(n)));
  EqSeq own = EqSeq::make(std::move(points), std::move(partitions));
  OrbitTree own_tree = orbit_tree(own);

  WfTree sliced = merged_tree.tree.level_subtree(slots);

  EmbeddingResult result;
  for (std::size_t i = 0; i < own_tree.node_class.size(); ++i) {
    auto [level, cls] = own_tree.node_class[i];
    int least = own.classes(level)[cls][0];
    int merged_class = merged_seq.class_of(slots[level], least);
    result.map.assignment[static_cast<int>(i)] =
        merged_tree.node_of.at({slots[level], merged_class});
  }
  result.report = check_order_preserving(result.map, own_tree.tree, sliced, true);
  result.isomorphism = result.report.embedding &&
                       result.report.level_preserving &&
                       result.map.assignment.size() == sliced.size() &&
                       result.report.rank_source == result.report.rank_target;
  return result;
}

}  // namespace

InterleaveCheck verify_interleaving(const ChainGroup& a, const ChainGroup& b,
                                    const InterleaveResult& r, int k) {
  CosetSpace space = cosets(r.merged, k);
  EqSeq merged_seq = coset_eqseq(r.merged, k);
  OrbitTree merged_tree = orbit_tree(merged_seq);
  InterleaveCheck check;
  check.a_iso = slot_isomorphism(a, r.a_slots, space, merged_tree, merged_seq);
  check.b_iso = slot_isomorphism(b, r.b_slots, space, merged_tree, merged_seq);
  check.ok = check.a_iso.isomorphism && check.b_iso.isomorphism;
  return check;
}

GSet GSet::make(const ChainGroup& g, int npoints, std::vector<Perm> gen_images) {
  if (gen_images.size() != g.gens(0).size())
    throw Error(Err::ValidationError,
                "need one action image per generator of the whole group");
  for (const Perm& p : gen_images)
    if (p.degree() != npoints)
      throw Error(Err::ValidationError, "action image degree mismatch");
  GSet x;
  x.npoints_ = npoints;
  // Simultaneous closure of (group element, action permutation) pairs; the
  // assignment extends to a homomorphism iff it stays a function.
  x.act_.emplace(Perm(g.degree()), Perm(npoints));
  std::deque<Perm> todo{Perm(g.degree())};
  while (!todo.empty()) {
    Perm cur = std::move(todo.front());
    todo.pop_front();
    Perm cur_act = x.act_.at(cur);
    for (std::size_t i = 0; i < gen_images.size(); ++i) {
      Perm next = compose(cur, g.gens(0)[i]);
      Perm next_act = compose(cur_act, gen_images[i]);
      auto it = x.act_.find(next);
      if (it == x.act_.end()) {
        x.act_.emplace(next, next_act);
        todo.push_back(std::move(next));
      } else if (!(it->second == next_act)) {
        throw Error(Err::ValidationError,
                    "action does not extend to a homomorphism (element " +
                        next.cycles() + ")");
      }
    }
  }
  return x;
}

const Perm& GSet::action_of(const Perm& element) const {
  auto it = act_.find(element);
  if (it == act_.end())
    throw Error(Err::NodeNotFound, "element outside the group: " + element.cycles());
  return it->second;
}

StabilizerInfo stabilizer(const ChainGroup& g, const GSet& x, int point) {
  if (point < 0 || point >= x.points())
    throw Error(Err::IndexOutOfRange, "point " + std::to_string(point));
  StabilizerInfo info;
  for (const Perm& e : g.elements(0))
    if (x.action_of(e)(point) == point) info.elements.push_back(e);
  for (int k = 0; k < g.levels(); ++k) {
    bool inside = true;
    for (const Perm& e : g.elements(k))
      if (!contains(info.elements, e)) {
        inside = false;
        break;
      }
    if (inside) {
      info.least_k = k;
      return info;
    }
  }
  info.least_k = g.top_index();
  return info;
}

Ordinal gset_rank(const ChainGroup& g, const GSet& x) {
  std::vector<int> points(x.points());
  std::iota(points.begin(), points.end(), 0);
  std::vector<std::vector<std::vector<int>>> partitions;
  for (int n = 0; n < g.levels(); ++n) {
    std::vector<Perm> movers;
    for (const Perm& e : g.gens(n)) {
      movers.push_back(x.action_of(e));
      movers.push_back(x.action_of(e).inverse());
    }
    std::vector<int> owner(x.points(), -1);
    std::vector<std::vector<int>> blocks;
    for (int start = 0; start < x.points(); ++start) {
      if (owner[start] >= 0) continue;
      std::vector<int> orbit{start};
      owner[start] = static_cast<int>(blocks.size());
      for (std::size_t head = 0; head < orbit.size(); ++head)
        for (const Perm& m : movers) {
          int next = m(orbit[head]);
          if (owner[next] < 0) {
            owner[next] = static_cast<int>(blocks.size());
            orbit.push_back(next);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      blocks.push_back(std::move(orbit));
    }
    partitions.push_back(std::move(blocks));
  }
  EqSeq seq = EqSeq::make(std::move(points), std::move(partitions));
  return orbit_tree(seq).tree.tree_rank();
}

TsiReport tsi_check(const ChainGroup& g) {
  TsiReport report;
  report.all_normal = true;
  for (int n = 0; n < g.levels(); ++n) {
    bool normal = true;
    for (const Perm& c : g.gens(0)) {
      Perm cinv = c.inverse();
      for (const Perm& x : g.gens(n))
        if (!contains(g.elements(n), compose(compose(c, x), cinv))) {
          normal = false;
          break;
        }
      if (!normal) break;
    }
    report.normal_in_g0.push_back(normal);
    report.all_normal = report.all_normal && normal;
  }

  report.conjugate_union_contained = true;
  for (int k = 0; k < g.levels(); ++k) {
    EqSeq seq = coset_eqseq(g, k);
    int m = g.top_index();
    for (int n = 0; n < g.levels(); ++n)
      if (seq.discrete(n)) {
        m = n;
        break;
      }
    report.m_k.push_back(m);
    std::vector<Perm> m_gens = reduce_generators(g.degree(), g.elements(m));
    for (const Perm& e : g.elements(0)) {
      Perm einv = e.inverse();
      for (const Perm& x : m_gens)
        if (!contains(g.elements(k), compose(compose(einv, x), e)))
          report.conjugate_union_contained = false;
    }
  }

  // Largest normal subgroup of the whole group inside each level: keep the
  // elements whose full conjugation orbit stays inside the level.
  std::vector<std::vector<Perm>> core_gens;
  report.core_differs = false;
  for (int n = 0; n < g.levels(); ++n) {
    std::vector<Perm> core;
    for (const Perm& x : g.elements(n)) {
      bool stays = true;
      std::set<Perm> orbit{x};
      std::deque<Perm> todo{x};
      while (!todo.empty() && stays) {
        Perm cur = std::move(todo.front());
        todo.pop_front();
        for (const Perm& c : g.gens(0)) {
          Perm conj = compose(compose(c, cur), c.inverse());
          if (!contains(g.elements(n), conj)) {
            stays = false;
            break;
          }
          if (orbit.insert(conj).second) todo.push_back(conj);
        }
      }
      if (stays) core.push_back(x);
    }
    if (core.size() != g.elements(n).size()) report.core_differs = true;
    core_gens.push_back(reduce_generators(g.degree(), core));
  }
  report.normal_core_chain = ChainGroup::make(g.degree(), std::move(core_gens));
  return report;
}

}  // namespace orbitrank
