#include "lgo/statespace.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "lgo/error.hpp"

namespace lgo {

std::string Charges::to_string() const { return "(" + left.get_str() + ", " + right.get_str() + ")"; }

int Block::position(const BlockEntry& e) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), e);
  if (it == entries.end() || !(*it == e)) return -1;
  return static_cast<int>(it - entries.begin());
}

const Block* StateSpace::block(const Charges& c) const {
  auto it = block_index_.find(c);
  return it == block_index_.end() ? nullptr : &blocks_[it->second];
}

long StateSpace::total_dimension() const {
  long n = 0;
  for (const auto& s : sectors_) n += s.dimension();
  return n;
}

long StateSpace::invariant_dimension() const {
  long n = 0;
  for (const auto& b : blocks_) n += b.dimension();
  return n;
}

long Diamond::at(int a, int b) const {
  if (a < 0 || b < 0 || a > D || b > D) return 0;
  return h[a][b];
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerificationCheck& c) { return c.pass; });
}

namespace {

void run_parallel(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next++;
        if (i >= count) return;
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// N_g x N matrix reading the fixed-locus coordinates of a vector in Fix(g).
CycMatrix coordinate_projection(const FixedLocus& fl, int conductor) {
  const int nv = fl.g.nvars();
  CycMatrix p(fl.n_fixed(), nv, conductor);
  for (int j = 0; j < fl.n_fixed(); ++j) p(j, fl.fixed_rows[j]) = CycNum::one(conductor);
  return p;
}

// p(T z) for p in the coordinates of one fixed locus, written in another one's.
Polynomial pull_back(const Polynomial& p, const CycMatrix& t, int target_vars) {
  if (p.nvars() == 0) {
    Polynomial out(target_vars, p.conductor());
    out.add_term(Monomial::one(target_vars), p.coefficient(Monomial::one(0)));
    return out;
  }
  return substitute_linear(p, t);
}

struct Transport {
  int target = 0;
  CycMatrix linear;  // N_g x N_{g'}
  CycNum scalar;
};

Transport make_transport(const StateSpace& space, int h, int s) {
  const auto& group = space.group();
  const int n = space.conductor();
  const Sector& source = space.sector_of(s);
  Transport tr;
  tr.target = group.conjugate_index(h, s);
  const Sector& target = space.sector_of(tr.target);
  tr.linear = coordinate_projection(source.fixed, n) * group[h].inverse().matrix(n) * target.fixed.basis.lift(n);
  tr.scalar = rho_constant(group[h], source.fixed, target.fixed).lift(n);
  return tr;
}

// Coordinates of h*([m_i] xi_g) in the target sector's ring basis.
std::vector<std::pair<int, CycNum>> image_of(const StateSpace& space, const Transport& tr, const Sector& source, int i) {
  const int n = space.conductor();
  const Sector& target = space.sector_of(tr.target);
  const Polynomial p = Polynomial::term(source.ring->basis[i], tr.scalar);
  return target.ring->sparse_coordinates(pull_back(p, tr.linear, target.fixed.n_fixed()), n);
}

std::unordered_map<long, int> position_map(const std::vector<BlockEntry>& entries) {
  std::unordered_map<long, int> pos;
  for (std::size_t k = 0; k < entries.size(); ++k)
    pos[(static_cast<long>(entries[k].sector) << 32) | entries[k].basis] = static_cast<int>(k);
  return pos;
}

int find_position(const std::unordered_map<long, int>& pos, int sector, int basis) {
  auto it = pos.find((static_cast<long>(sector) << 32) | basis);
  return it == pos.end() ? -1 : it->second;
}

std::string entry_name(const StateSpace& space, const BlockEntry& e) {
  const Sector& s = space.sector_of(e.sector);
  const Polynomial m = Polynomial::term(s.ring->basis[e.basis], CycNum::one(1));
  return "[" + m.to_string(default_variable_names(s.fixed.n_fixed())) + "] xi_" + space.group()[e.sector].to_string();
}

CycNum volume_factor(const Sector& s, int n) {
  const int nv = s.fixed.g.nvars();
  CycMatrix m(nv, nv, n);
  const CycMatrix c = s.fixed.complement.lift(n);
  const CycMatrix b = s.fixed.basis.lift(n);
  for (int i = 0; i < nv; ++i) {
    for (int j = 0; j < c.cols(); ++j) m(i, j) = c(i, j);
    for (int j = 0; j < b.cols(); ++j) m(i, c.cols() + j) = b(i, j);
  }
  return determinant(m);
}

bool is_unit_column(const CycMatrix& v, int col, int row) {
  for (int i = 0; i < v.rows(); ++i)
    if (v(i, col).is_zero() != (i != row)) return false;
  return true;
}

}  // namespace

Charges charges(const Polynomial& p, const Sector& sector) {
  const WeightSystem& w = sector.ring->weights;
  std::optional<Rational> deg;
  for (const auto& [m, c] : p.terms()) {
    const Rational d = weighted_degree(m, w);
    if (deg && *deg != d) throw Error(ErrorCode::kNonHomogeneous, "polynomial " + p.to_string() + " is not homogeneous");
    deg = d;
  }
  const Rational base = deg.value_or(Rational(0)) - sector.moved_weight;
  Charges c{base + sector.age, base + sector.inverse_age};
  c.left.canonicalize();
  c.right.canonicalize();
  return c;
}

CycMatrix action_matrix(const StateSpace& space, int h, const std::vector<BlockEntry>& entries) {
  if (h < 0 || static_cast<std::size_t>(h) >= space.group().order()) {
    throw Error(ErrorCode::kNotInGroup, "group index " + std::to_string(h) + " out of range");
  }
  const int n = space.conductor();
  const int size = static_cast<int>(entries.size());
  const auto pos = position_map(entries);
  CycMatrix a(size, size, n);
  std::unordered_map<int, Transport> cache;
  for (int col = 0; col < size; ++col) {
    const BlockEntry& e = entries[col];
    auto it = cache.find(e.sector);
    if (it == cache.end()) it = cache.emplace(e.sector, make_transport(space, h, e.sector)).first;
    const auto image = image_of(space, it->second, space.sector_of(e.sector), e.basis);
    for (const auto& [k, value] : image) {
      const int row = find_position(pos, it->second.target, k);
      if (row < 0) {
        throw Error(ErrorCode::kInternal, "block is not stable under " + space.group()[h].to_string() + ": " +
                                              entry_name(space, e) + " leaves it");
      }
      a(row, col) = value;
    }
  }
  return a;
}

CycMatrix action_matrix(const StateSpace& space, const GroupElement& h, const std::vector<BlockEntry>& entries) {
  const int index = space.group().index_of(h);
  if (index < 0) throw Error(ErrorCode::kNotInGroup, h.to_string() + " is not in the group");
  return action_matrix(space, index, entries);
}

CycMatrix reynolds_operator(const StateSpace& space, const std::vector<BlockEntry>& entries) {
  const int n = space.conductor();
  const int size = static_cast<int>(entries.size());
  CycMatrix r(size, size, n);
  const int order = static_cast<int>(space.group().order());
  for (int h = 0; h < order; ++h) r = r + action_matrix(space, h, entries);
  r *= CycNum(n, Rational(1, order));
  return r;
}

CycMatrix invariant_basis(const StateSpace& space, const std::vector<BlockEntry>& entries) {
  const CycMatrix r = reynolds_operator(space, entries);
  const auto cols = column_basis(r);
  CycMatrix out(r.rows(), static_cast<int>(cols.size()), r.conductor());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < r.rows(); ++i) out(i, static_cast<int>(j)) = r(i, cols[j]);
  return out;
}

long invariants_dim_oracle(const StateSpace& space, const Block& block) {
  const auto& group = space.group();
  const int n = space.conductor();
  long total = 0;
  for (const auto& cls : group.conjugacy_classes()) {
    const int g = cls.front();
    std::vector<int> basis;
    for (const auto& e : block.entries)
      if (e.sector == g) basis.push_back(e.basis);
    if (basis.empty()) continue;
    CycNum trace = CycNum::zero(n);
    long centralizer = 0;
    for (int h = 0; h < static_cast<int>(group.order()); ++h) {
      if (group.conjugate_index(h, g) != g) continue;
      ++centralizer;
      const Transport tr = make_transport(space, h, g);
      for (int i : basis) {
        for (const auto& [k, value] : image_of(space, tr, space.sector_of(g), i))
          if (k == i) trace += value;
      }
    }
    trace *= Rational(1, centralizer);
    const auto value = trace.as_rational();
    if (!value || !is_integer(*value) || sgn(*value) < 0) {
      throw Error(ErrorCode::kInternal, "character average is not a non-negative integer");
    }
    total += value->get_num().get_si();
  }
  return total;
}

CycMatrix psi_matrix(const StateSpace& space, const std::vector<BlockEntry>& source,
                     const std::vector<BlockEntry>& target) {
  const auto& group = space.group();
  const int n = space.conductor();
  const auto pos = position_map(target);
  CycMatrix out(static_cast<int>(target.size()), static_cast<int>(source.size()), n);
  std::unordered_map<int, Transport> cache;
  for (std::size_t col = 0; col < source.size(); ++col) {
    const BlockEntry& e = source[col];
    auto it = cache.find(e.sector);
    if (it == cache.end()) {
      const Sector& s = space.sector_of(e.sector);
      Transport tr;
      tr.target = group.inverse_index(e.sector);
      const Sector& t = space.sector_of(tr.target);
      tr.linear = coordinate_projection(s.fixed, n) * t.fixed.basis.lift(n);
      tr.scalar = CycNum::one(n);
      if (s.fixed.codim() > 0) {
        // Both letters are the same wedge of C^N / Fix(g); express it in the g^{-1} basis.
        auto change = solve(t.fixed.complement.lift(n), s.fixed.complement.lift(n));
        if (!change) throw Error(ErrorCode::kInternal, "g and g^-1 move different subspaces");
        tr.scalar = determinant(*change);
      }
      it = cache.emplace(e.sector, std::move(tr)).first;
    }
    const auto image = image_of(space, it->second, space.sector_of(e.sector), e.basis);
    for (const auto& [k, value] : image) {
      const int row = find_position(pos, it->second.target, k);
      if (row < 0) throw Error(ErrorCode::kInternal, "Psi image of " + entry_name(space, e) + " outside target");
      out(row, static_cast<int>(col)) = value;
    }
  }
  return out;
}

CycMatrix pairing_matrix(const StateSpace& space, const std::vector<BlockEntry>& left,
                         const std::vector<BlockEntry>& right) {
  const int n = space.conductor();
  CycMatrix out(static_cast<int>(left.size()), static_cast<int>(right.size()), n);
  std::unordered_map<int, CycNum> volume;
  for (std::size_t i = 0; i < left.size(); ++i) {
    const Sector& s = space.sector_of(left[i].sector);
    auto it = volume.find(left[i].sector);
    if (it == volume.end()) {
      const CycNum v = volume_factor(s, n);
      it = volume.emplace(left[i].sector, v * v).first;
    }
    const Polynomial u = Polynomial::term(s.ring->basis[left[i].basis], CycNum::one(n));
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (right[j].sector != left[i].sector) continue;
      const Polynomial v = Polynomial::term(s.ring->basis[right[j].basis], CycNum::one(n));
      out(static_cast<int>(i), static_cast<int>(j)) = residue_pairing(u, v, *s.ring).lift(n) * it->second;
    }
  }
  return out;
}

StateSpace build_state_space(const Polynomial& f, const WeightSystem& w, std::shared_ptr<const FiniteGroup> group,
                             const StateSpaceOptions& options) {
  StateSpace space;
  space.f_ = f;
  space.weights_ = w;
  space.group_ = std::move(group);
  const FiniteGroup& G = *space.group_;
  const int n = static_cast<int>(lcm_long(G.conductor(), f.conductor()));
  space.conductor_ = n;
  const Rational total_weight = w.sum();

  space.sectors_.resize(G.order());
  run_parallel(G.order(), options.threads, [&](std::size_t i) {
    Sector& s = space.sectors_[i];
    s.element = static_cast<int>(i);
    s.fixed = fixed_locus(G[i], w, n);
    s.restricted = restrict(f.lift(n), s.fixed);
    s.ring = cached_quotient_ring(s.restricted, w.subset(s.fixed.fixed_rows));
    s.age = age(G[i]);
    s.inverse_age = age(G[i].inverse());
    s.moved_weight = total_weight;
    for (const auto& q : s.fixed.fixed_weights) s.moved_weight -= q;
    s.moved_weight.canonicalize();
    for (const auto& m : s.ring->basis) s.charges.push_back(charges(Polynomial::term(m, CycNum::one(n)), s));
  });

  std::map<Charges, std::vector<BlockEntry>> grouped;
  for (const auto& s : space.sectors_)
    for (int i = 0; i < s.dimension(); ++i) grouped[s.charges[i]].push_back({s.element, i});
  for (auto& [c, entries] : grouped) {
    Block b;
    b.charges = c;
    b.entries = std::move(entries);
    std::sort(b.entries.begin(), b.entries.end());
    std::map<int, std::vector<int>> by_class;
    for (std::size_t k = 0; k < b.entries.size(); ++k)
      by_class[G.class_of(b.entries[k].sector)].push_back(static_cast<int>(k));
    for (auto& [cls, positions] : by_class) b.orbits.push_back(std::move(positions));
    space.block_index_[c] = static_cast<int>(space.blocks_.size());
    space.blocks_.push_back(std::move(b));
  }

  if (!options.compute_invariants) {
    for (auto& b : space.blocks_) b.invariants = CycMatrix(static_cast<int>(b.entries.size()), 0, n);
    return space;
  }

  // One task per (block, orbit); each fills its own slot.
  std::vector<std::pair<int, int>> tasks;
  for (std::size_t b = 0; b < space.blocks_.size(); ++b)
    for (std::size_t o = 0; o < space.blocks_[b].orbits.size(); ++o)
      tasks.emplace_back(static_cast<int>(b), static_cast<int>(o));
  std::vector<CycMatrix> partial(tasks.size());
  std::vector<long> oracle(space.blocks_.size(), 0);
  run_parallel(tasks.size() + space.blocks_.size(), options.threads, [&](std::size_t t) {
    if (t >= tasks.size()) {
      const std::size_t b = t - tasks.size();
      oracle[b] = invariants_dim_oracle(space, space.blocks_[b]);
      return;
    }
    const Block& b = space.blocks_[tasks[t].first];
    std::vector<BlockEntry> sub;
    for (int k : b.orbits[tasks[t].second]) sub.push_back(b.entries[k]);
    partial[t] = invariant_basis(space, sub);
  });

  std::size_t t = 0;
  for (std::size_t bi = 0; bi < space.blocks_.size(); ++bi) {
    Block& b = space.blocks_[bi];
    int dim = 0;
    for (std::size_t o = 0; o < b.orbits.size(); ++o) dim += partial[t + o].cols();
    b.invariants = CycMatrix(static_cast<int>(b.entries.size()), dim, n);
    int col = 0;
    for (std::size_t o = 0; o < b.orbits.size(); ++o, ++t) {
      const CycMatrix& p = partial[t];
      for (int j = 0; j < p.cols(); ++j, ++col)
        for (int i = 0; i < p.rows(); ++i) b.invariants(b.orbits[o][i], col) = p(i, j);
    }
    b.oracle_dimension = oracle[bi];
  }

  if (options.check_invariance) {
    std::vector<int> gens;
    for (const auto& g : G.generators()) gens.push_back(G.index_of(g));
    run_parallel(space.blocks_.size(), options.threads, [&](std::size_t bi) {
      const Block& b = space.blocks_[bi];
      if (b.dimension() == 0) return;
      for (int h : gens) {
        if (!(action_matrix(space, h, b.entries) * b.invariants == b.invariants)) {
          throw Error(ErrorCode::kInternal, "invariant vector of bidegree " + b.charges.to_string() +
                                                " moved by " + G[h].to_string());
        }
      }
    });
  }
  return space;
}

Diamond assemble_diamond(const StateSpace& space) {
  Diamond d;
  d.D = space.weights().nvars() - 2;
  if (d.D >= 0) d.h.assign(d.D + 1, std::vector<long>(d.D + 1, 0));
  for (const auto& b : space.blocks()) {
    if (b.dimension() == 0) continue;
    if (!b.charges.integral()) {
      int witness = 0;
      for (int i = 0; i < b.invariants.rows(); ++i)
        if (!b.invariants(i, 0).is_zero()) {
          witness = i;
          break;
        }
      throw Error(ErrorCode::kNonIntegerCharge, "invariant involving " + entry_name(space, b.entries[witness]) +
                                                    " has charges " + b.charges.to_string());
    }
    d.total += b.dimension();
    const long a = b.charges.left.get_num().get_si();
    const long c = b.charges.right.get_num().get_si();
    if (a >= 0 && c >= 0 && a <= d.D && c <= d.D) {
      d.h[a][c] += b.dimension();
    } else {
      d.outside.emplace_back(b.charges, b.dimension());
    }
  }
  return d;
}

void check_theorem_preconditions(const WeightSystem& w, const FiniteGroup& group) {
  if (w.sum() != 1) {
    throw Error(ErrorCode::kPreconditionFailed,
                "f is not Calabi-Yau: the weights sum to " + w.sum().get_str() + ", not 1");
  }
  const GroupElement jf = make_jf(w);
  if (!group.contains(jf)) {
    throw Error(ErrorCode::kPreconditionFailed, "MissingJ: the grading element " + jf.to_string() + " is not in G");
  }
  for (const auto& g : group.elements()) {
    if (!is_sl(g)) throw Error(ErrorCode::kPreconditionFailed, "NotInSL: " + g.to_string() + " has determinant != 1");
  }
}

VerificationReport verify_theorem(const StateSpace& space, const Diamond& diamond) {
  check_theorem_preconditions(space.weights(), space.group());
  return diamond_checks(space, diamond);
}

VerificationReport diamond_checks(const StateSpace& space, const Diamond& diamond) {
  const auto& group = space.group();
  const int D = diamond.D;
  VerificationReport report;

  {
    VerificationCheck c{"integral charges", true, ""};
    long count = 0;
    for (const auto& b : space.blocks()) {
      if (b.dimension() == 0) continue;
      ++count;
      if (!b.charges.integral() && c.pass) {
        c.pass = false;
        c.witness = "invariants of fractional bidegree " + b.charges.to_string();
      }
    }
    if (c.pass) c.witness = std::to_string(count) + " occupied bidegrees, all integral";
    report.checks.push_back(c);
  }
  {
    VerificationCheck c{"support in [0,D]^2", diamond.outside.empty(), ""};
    if (c.pass) {
      c.witness = "D = " + std::to_string(D);
    } else {
      c.witness = "h at " + diamond.outside.front().first.to_string() + " = " +
                  std::to_string(diamond.outside.front().second);
    }
    report.checks.push_back(c);
  }

  auto one_dimensional_at = [&](long a, long b, int sector, int basis, const std::string& label) {
    std::ostringstream w;
    const Block* blk = space.block(Charges{Rational(a), Rational(b)});
    const long h = diamond.at(static_cast<int>(a), static_cast<int>(b));
    bool ok = h == 1 && blk != nullptr;
    if (ok) {
      const int row = blk->position({sector, basis});
      ok = row >= 0 && is_unit_column(blk->invariants, 0, row);
    }
    w << "h^{" << a << "," << b << "} = " << h << (ok ? " spanned by " : ", expected span of ") << label;
    return std::make_pair(ok, w.str());
  };

  const int id = group.identity_index();
  const Sector& id_sector = space.sector_of(id);
  {
    const auto low = one_dimensional_at(0, 0, id, 0, "[1] xi_id");
    const auto high = one_dimensional_at(D, D, id, id_sector.ring->top_index, "[hess(f)] xi_id");
    report.checks.push_back({"h^{0,0} = h^{D,D} = 1", low.first && high.first, low.second + "; " + high.second});
  }
  {
    const int jf = group.index_of(make_jf(space.weights()));
    if (jf < 0) {
      report.checks.push_back({"h^{D,0} = h^{0,D} = 1", false, "j_f is not in G"});
    } else {
      const int jf_inv = group.inverse_index(jf);
      const auto left = one_dimensional_at(D, 0, jf_inv, 0, "[1] xi_{j_f^-1}");
      const auto right = one_dimensional_at(0, D, jf, 0, "[1] xi_{j_f}");
      report.checks.push_back({"h^{D,0} = h^{0,D} = 1", left.first && right.first, left.second + "; " + right.second});
    }
  }

  std::vector<int> gens;
  for (const auto& g : group.generators()) gens.push_back(group.index_of(g));

  {
    VerificationCheck c{"Psi symmetry h^{a,b} = h^{b,a}", true, ""};
    for (const auto& b : space.blocks()) {
      if (b.dimension() == 0 || !c.pass) continue;
      const Block* mirror = space.block(Charges{b.charges.right, b.charges.left});
      bool ok = mirror != nullptr && mirror->dimension() == b.dimension();
      if (ok) {
        const CycMatrix image = psi_matrix(space, b.entries, mirror->entries) * b.invariants;
        ok = rank(image) == b.dimension();
        for (int h : gens) ok = ok && action_matrix(space, h, mirror->entries) * image == image;
      }
      if (!ok) {
        c.pass = false;
        c.witness = "Psi fails between " + b.charges.to_string() + " and its mirror";
      }
    }
    if (c.pass) c.witness = "Psi maps every invariant block isomorphically onto its mirror";
    report.checks.push_back(c);
  }
  {
    VerificationCheck c{"Phi duality h^{a,b} = h^{D-b,D-a}", true, ""};
    for (const auto& b : space.blocks()) {
      if (b.dimension() == 0 || !c.pass) continue;
      const Charges dual{D - b.charges.right, D - b.charges.left};
      const Block* other = space.block(dual);
      bool ok = other != nullptr && other->dimension() == b.dimension();
      if (ok) {
        const CycMatrix gram = b.invariants.transpose() * pairing_matrix(space, b.entries, other->entries) *
                               other->invariants;
        ok = rank(gram) == b.dimension();
      }
      if (!ok) {
        c.pass = false;
        c.witness = "Gram matrix between " + b.charges.to_string() + " and " + dual.to_string() + " is degenerate";
      }
    }
    if (c.pass) c.witness = "every Gram matrix between dual blocks has full rank";
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace lgo
