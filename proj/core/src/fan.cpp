#include "toricount/fan.hpp"

#include <algorithm>
#include <set>

#include "toricount/detail/dd.hpp"

namespace toricount {

bool Cone::contains(const LatticeVector& v) const {
  for (const auto& h : halfspaces)
    if (pairing(h, v) < 0) return false;
  return true;
}

Cone build_cone(const std::vector<LatticeVector>& generators, int rank) {
  std::vector<IntVec> gens;
  for (const auto& g : generators) {
    if (g.rank() != rank) throw ArityMismatch("generator of wrong rank");
    IntVec v = g.coords;
    bool zero = true;
    for (const Int& x : v)
      if (x != 0) {
        zero = false;
        break;
      }
    if (zero) continue;
    detail::make_primitive(v);
    gens.push_back(std::move(v));
  }
  std::sort(gens.begin(), gens.end(),
            [](const IntVec& a, const IntVec& b) { return compare_vec(a, b) < 0; });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // Halfspaces are the generators of the dual cone; span constraints show up
  // as its lineality space and become opposite pairs.
  detail::DualDescription dd = detail::dual_description(gens, rank);
  std::vector<IntVec> dual_rows;
  Cone cone;
  for (const IntVec& l : dd.lines) {
    IntVec neg(l.size());
    for (size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    cone.halfspaces.push_back(Covector{l});
    cone.halfspaces.push_back(Covector{std::move(neg)});
    dual_rows.push_back(l);
  }
  for (const IntVec& r : dd.rays) {
    cone.halfspaces.push_back(Covector{r});
    dual_rows.push_back(r);
  }
  if (detail::rank_rows(dual_rows, rank) < rank)
    throw NotStronglyConvex("generators span a cone containing a line");
  std::sort(cone.halfspaces.begin(), cone.halfspaces.end());

  cone.dim = detail::rank_rows(gens, rank);
  for (const IntVec& g : gens)
    for (const auto& h : cone.halfspaces)
      if (detail::dot(h.coords, g) < 0)
        throw InternalError("dual description produced a violated halfspace");

  // A generator is an extreme ray iff the face it spans is one-dimensional:
  // collect the generators tight on all of its tight halfspaces.
  for (const IntVec& g : gens) {
    std::vector<const Covector*> tight;
    for (const auto& h : cone.halfspaces)
      if (detail::dot(h.coords, g) == 0) tight.push_back(&h);
    std::vector<IntVec> on_face;
    for (const IntVec& g2 : gens) {
      bool in = true;
      for (const Covector* h : tight)
        if (detail::dot(h->coords, g2) != 0) {
          in = false;
          break;
        }
      if (in) on_face.push_back(g2);
    }
    if (detail::rank_rows(on_face, rank) == 1) cone.rays.push_back(LatticeVector{g});
  }
  std::sort(cone.rays.begin(), cone.rays.end());
  return cone;
}

const Fan::Entry& Fan::entry(int id) const {
  if (id < 0 || id >= static_cast<int>(cones.size()))
    throw UnknownCone("cone id " + std::to_string(id) + " out of range");
  return cones[id];
}

int Fan::id_of(const std::vector<int>& sorted_ray_ids) const {
  for (int i = 0; i < static_cast<int>(cones.size()); ++i)
    if (cones[i].ray_ids == sorted_ray_ids) return i;
  return -1;
}

std::optional<int> Fan::maximal_containing(const LatticeVector& v) const {
  for (int id : maximal_ids)
    if (cones[id].cone.contains(v)) return id;
  return std::nullopt;
}

namespace {

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Extreme rays of the intersection of two cones, from the union of their
// halfspace descriptions.
std::vector<LatticeVector> intersect_cones(const Cone& a, const Cone& b, int rank) {
  std::vector<IntVec> constraints;
  constraints.reserve(a.halfspaces.size() + b.halfspaces.size());
  for (const auto& h : a.halfspaces) constraints.push_back(h.coords);
  for (const auto& h : b.halfspaces) constraints.push_back(h.coords);
  detail::DualDescription dd = detail::dual_description(constraints, rank);
  if (!dd.lines.empty())
    throw InternalError("intersection of strongly convex cones has a line");
  std::vector<LatticeVector> rays;
  rays.reserve(dd.rays.size());
  for (IntVec& r : dd.rays) rays.push_back(LatticeVector{std::move(r)});
  return rays;
}

// Extreme rays of the smallest face of `c` containing all of `pts`.
std::vector<LatticeVector> minimal_face_rays(const Cone& c, const std::vector<LatticeVector>& pts) {
  std::vector<const Covector*> tight;
  for (const auto& h : c.halfspaces) {
    bool all_zero = true;
    for (const auto& p : pts)
      if (pairing(h, p) != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) tight.push_back(&h);
  }
  std::vector<LatticeVector> rays;
  for (const auto& r : c.rays) {
    bool in = true;
    for (const Covector* h : tight)
      if (pairing(*h, r) != 0) {
        in = false;
        break;
      }
    if (in) rays.push_back(r);
  }
  return rays;
}

}  // namespace

Fan build_fan(int rank, std::vector<LatticeVector> rays,
              const std::vector<std::vector<int>>& maximal_cones, bool validate) {
  for (const auto& r : rays) {
    if (r.rank() != rank) throw NotAFan("ray of wrong rank");
    IntVec copy = r.coords;
    detail::make_primitive(copy);
    bool zero = true;
    for (const Int& x : copy)
      if (x != 0) zero = false;
    if (zero) throw NotAFan("zero vector listed as a ray");
    if (copy != r.coords) throw NotAFan("ray " + to_string(r.coords) + " is not primitive");
  }
  for (size_t i = 0; i < rays.size(); ++i)
    for (size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j]) throw NotAFan("duplicate ray " + to_string(rays[i].coords));

  // Normalize listed cones to sorted unique index lists; an empty fan means
  // the single zero cone (the torus itself).
  std::vector<std::vector<int>> listed = maximal_cones;
  if (listed.empty()) listed.push_back({});
  std::set<std::vector<int>> listed_set;
  for (auto& l : listed) {
    for (int idx : l)
      if (idx < 0 || idx >= static_cast<int>(rays.size()))
        throw NotAFan("ray index " + std::to_string(idx) + " out of range");
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    listed_set.insert(l);
  }
  listed.assign(listed_set.begin(), listed_set.end());

  // Build the listed cones and check the listed generators are exactly the
  // extreme rays (anything else makes per-ray data ill-defined).
  std::vector<Cone> listed_geom;
  for (const auto& l : listed) {
    std::vector<LatticeVector> gens;
    for (int idx : l) gens.push_back(rays[idx]);
    Cone c = build_cone(gens, rank);
    std::vector<LatticeVector> sorted_gens = gens;
    std::sort(sorted_gens.begin(), sorted_gens.end());
    if (!(c.rays == sorted_gens))
      throw NotAFan("listed generators of a cone are not its extreme rays");
    listed_geom.push_back(std::move(c));
  }

  // Drop listed cones that are faces of other listed cones.
  std::vector<int> keep;
  for (size_t i = 0; i < listed.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < listed.size(); ++j)
      if (i != j && listed[i].size() <= listed[j].size() && is_subset(listed[i], listed[j]) &&
          !(listed[i] == listed[j]))
        dominated = true;
    if (!dominated) keep.push_back(static_cast<int>(i));
  }

  if (validate) {
    for (size_t a = 0; a < keep.size(); ++a)
      for (size_t b = a + 1; b < keep.size(); ++b) {
        const Cone& ca = listed_geom[keep[a]];
        const Cone& cb = listed_geom[keep[b]];
        std::vector<LatticeVector> inter = intersect_cones(ca, cb, rank);
        std::sort(inter.begin(), inter.end());
        std::vector<LatticeVector> fa = minimal_face_rays(ca, inter);
        std::vector<LatticeVector> fb = minimal_face_rays(cb, inter);
        std::sort(fa.begin(), fa.end());
        std::sort(fb.begin(), fb.end());
        if (!(fa == inter) || !(fb == inter))
          throw NotAFan("cones " + std::to_string(keep[a]) + " and " + std::to_string(keep[b]) +
                        " do not meet along a common face");
      }
  }

  // Face closure: tighten halfspaces one at a time. Every face of a cone is
  // reachable this way, and faces are identified by their ray index sets.
  std::set<std::vector<int>> signatures;
  for (int ki : keep) {
    const std::vector<int>& top = listed[ki];
    const Cone& geom = listed_geom[ki];
    std::vector<std::vector<int>> queue{top};
    signatures.insert(top);
    while (!queue.empty()) {
      std::vector<int> cur = queue.back();
      queue.pop_back();
      for (const auto& h : geom.halfspaces) {
        std::vector<int> sub;
        for (int idx : cur)
          if (pairing(h, rays[idx]) == 0) sub.push_back(idx);
        if (sub != cur && signatures.insert(sub).second) queue.push_back(sub);
      }
    }
  }

  Fan fan;
  fan.rank = rank;
  fan.rays = std::move(rays);

  std::vector<Fan::Entry> entries;
  for (const auto& sig : signatures) {
    Fan::Entry e;
    std::vector<LatticeVector> gens;
    for (int idx : sig) gens.push_back(fan.rays[idx]);
    e.cone = build_cone(gens, rank);
    e.ray_ids = sig;
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Fan::Entry& a, const Fan::Entry& b) {
    if (a.cone.dim != b.cone.dim) return a.cone.dim < b.cone.dim;
    return a.ray_ids < b.ray_ids;
  });
  fan.cones = std::move(entries);

  for (int ki : keep) {
    int id = fan.id_of(listed[ki]);
    if (id < 0) throw InternalError("maximal cone missing from its own closure");
    fan.maximal_ids.push_back(id);
  }
  std::sort(fan.maximal_ids.begin(), fan.maximal_ids.end());

  std::vector<bool> used(fan.rays.size(), false);
  for (int id : fan.maximal_ids)
    for (int idx : fan.cones[id].ray_ids) used[idx] = true;
  for (size_t i = 0; i < used.size(); ++i)
    if (!used[i]) throw NotAFan("ray " + to_string(fan.rays[i].coords) + " is not used by any cone");

  fan.faces_of.resize(fan.cones.size());
  for (size_t j = 0; j < fan.cones.size(); ++j)
    for (size_t i = 0; i < fan.cones.size(); ++i)
      if (is_subset(fan.cones[i].ray_ids, fan.cones[j].ray_ids))
        fan.faces_of[j].push_back(static_cast<int>(i));

  return fan;
}

std::vector<int> faces(const Fan& f, int cone_id) {
  f.entry(cone_id);
  return f.faces_of[cone_id];
}

SupportFunction make_support_function(const Fan& f, std::map<int, Covector> cartier) {
  for (int id : f.maximal_ids)
    if (!cartier.count(id))
      throw NotCartier("missing Cartier datum for maximal cone " + std::to_string(id));
  for (const auto& [id, m] : cartier) {
    if (std::find(f.maximal_ids.begin(), f.maximal_ids.end(), id) == f.maximal_ids.end())
      throw NotCartier("Cartier datum for non-maximal cone " + std::to_string(id));
    if (m.rank() != f.rank) throw NotCartier("Cartier datum of wrong rank");
  }
  // Compatibility: the data agree on every shared ray, hence (by linearity)
  // on every shared face.
  for (size_t ri = 0; ri < f.rays.size(); ++ri) {
    bool have = false;
    Int value = 0;
    for (int id : f.maximal_ids) {
      if (!f.cones[id].cone.contains(f.rays[ri])) continue;
      Int v = pairing(cartier.at(id), f.rays[ri]);
      if (!have) {
        value = v;
        have = true;
      } else if (v != value) {
        throw NotCartier("incompatible Cartier data at ray " + to_string(f.rays[ri].coords));
      }
    }
  }
  SupportFunction psi;
  psi.cartier = std::move(cartier);
  return psi;
}

SupportFunction support_from_ray_values(const Fan& f, const std::vector<Int>& values) {
  if (values.size() != f.rays.size())
    throw ArityMismatch("need exactly one value per ray");
  std::map<int, Covector> cartier;
  for (int id : f.maximal_ids) {
    const auto& e = f.cones[id];
    // Solve <m, v_rho> = value_rho over Z on this cone.
    const int k = static_cast<int>(e.ray_ids.size());
    std::vector<IntVec> cols(f.rank, IntVec(k));
    IntVec rhs(k);
    for (int c = 0; c < k; ++c) {
      const IntVec& ray = f.rays[e.ray_ids[c]].coords;
      for (int j = 0; j < f.rank; ++j) cols[j][c] = ray[j];
      rhs[c] = values[e.ray_ids[c]];
    }
    IntVec m;
    if (!detail::solve_left(cols, k, rhs, m))
      throw NotCartier("ray values are not integrally linear on maximal cone " +
                       std::to_string(id));
    cartier[id] = Covector{std::move(m)};
  }
  return make_support_function(f, std::move(cartier));
}

Int evaluate_support(const SupportFunction& psi, const Fan& f, const LatticeVector& v) {
  std::optional<int> id = f.maximal_containing(v);
  if (!id) throw OutsideSupport("vector " + to_string(v.coords) + " outside the fan support");
  return pairing(psi.cartier.at(*id), v);
}

std::vector<Int> ray_values(const SupportFunction& psi, const Fan& f) {
  std::vector<Int> vals;
  vals.reserve(f.rays.size());
  for (const auto& r : f.rays) vals.push_back(evaluate_support(psi, f, r));
  return vals;
}

bool is_effective(const SupportFunction& psi, const Fan& f) {
  for (const Int& v : ray_values(psi, f))
    if (v < 0) return false;
  return true;
}

SupportFunction add_support(const Fan& f, const SupportFunction& a, const SupportFunction& b) {
  std::map<int, Covector> cartier;
  for (int id : f.maximal_ids) {
    Covector m = a.cartier.at(id);
    const Covector& n = b.cartier.at(id);
    for (int j = 0; j < f.rank; ++j) m.coords[j] += n.coords[j];
    cartier[id] = std::move(m);
  }
  return make_support_function(f, std::move(cartier));
}

SupportFunction scale_support(const Fan& f, const SupportFunction& a, const Int& c) {
  std::map<int, Covector> cartier;
  for (int id : f.maximal_ids) {
    Covector m = a.cartier.at(id);
    for (int j = 0; j < f.rank; ++j) m.coords[j] *= c;
    cartier[id] = std::move(m);
  }
  return make_support_function(f, std::move(cartier));
}

namespace {

// Enumerate lattice points of a box, smallest coordinates varying last,
// filtered by the section inequalities.
std::vector<Covector> enumerate_box(const std::vector<std::pair<Int, Int>>& box,
                                    const std::vector<std::pair<LatticeVector, Int>>& ineqs) {
  const int n = static_cast<int>(box.size());
  Int cells = 1;
  for (const auto& [lo, hi] : box) {
    if (hi < lo) return {};
    cells *= hi - lo + 1;
    if (cells > 1 << 22) throw InternalError("section enumeration box too large");
  }
  std::vector<Covector> out;
  IntVec cur(n);
  for (int i = 0; i < n; ++i) cur[i] = box[i].first;
  for (;;) {
    bool ok = true;
    for (const auto& [v, c] : ineqs) {
      Int s = c;
      for (int i = 0; i < n; ++i) s += cur[i] * v.coords[i];
      if (s < 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(Covector{cur});
    int i = n - 1;
    while (i >= 0 && cur[i] == box[i].second) {
      cur[i] = box[i].first;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SectionEnumeration global_section_characters(const SupportFunction& psi, const Fan& f,
                                             const Int& bound) {
  SectionEnumeration out;
  for (size_t ri = 0; ri < f.rays.size(); ++ri)
    out.inequalities.emplace_back(f.rays[ri], evaluate_support(psi, f, f.rays[ri]));

  if (f.rank == 0) {
    out.bounded = true;
    out.characters.push_back(Covector{{}});
    return out;
  }

  // Homogenize: {(chi, t) : <chi, v> + t psi(v) >= 0, t >= 0}. Generators at
  // t > 0 are (scaled) vertices of the section polyhedron; generators at
  // t = 0 are recession directions, so any of them means unbounded.
  std::vector<IntVec> constraints;
  for (const auto& [v, c] : out.inequalities) {
    IntVec row = v.coords;
    row.push_back(c);
    constraints.push_back(std::move(row));
  }
  IntVec tpos(f.rank + 1, Int(0));
  tpos[f.rank] = 1;
  constraints.push_back(std::move(tpos));

  detail::DualDescription dd = detail::dual_description(constraints, f.rank + 1);
  bool bounded = dd.lines.empty();
  for (const IntVec& r : dd.rays)
    if (r.back() == 0) bounded = false;
  out.bounded = bounded;

  if (bounded) {
    if (dd.rays.empty()) return out;  // empty polyhedron
    std::vector<std::pair<Int, Int>> box;
    for (int i = 0; i < f.rank; ++i) {
      Int lo, hi;
      bool first = true;
      for (const IntVec& r : dd.rays) {
        Int fl, cl;
        mpz_fdiv_q(fl.get_mpz_t(), r[i].get_mpz_t(), r.back().get_mpz_t());
        mpz_cdiv_q(cl.get_mpz_t(), r[i].get_mpz_t(), r.back().get_mpz_t());
        if (first || fl < lo) lo = fl;
        if (first || cl > hi) hi = cl;
        first = false;
      }
      box.emplace_back(lo, hi);
    }
    out.characters = enumerate_box(box, out.inequalities);
  } else {
    if (bound < 0) throw ArityMismatch("negative enumeration bound");
    std::vector<std::pair<Int, Int>> box(f.rank, {-bound, bound});
    out.characters = enumerate_box(box, out.inequalities);
  }
  return out;
}

StarFan quotient_star_fan(const Fan& f, int tau_id) {
  const Fan::Entry& tau = f.entry(tau_id);
  const int n = f.rank;
  const int k = tau.cone.dim;

  std::vector<LatticeVector> tau_basis = saturate(tau.cone.rays, n);
  if (static_cast<int>(tau_basis.size()) != k)
    throw InternalError("saturated basis of a cone span has wrong rank");

  // Smith form of the saturated basis: the last n-k columns of v (and of the
  // inverse transpose) give the lattice projection for vectors resp.
  // characters orthogonal to tau.
  IntMatrix vmat = IntMatrix::identity(n);
  if (k > 0) {
    std::vector<IntVec> rows;
    for (const auto& b : tau_basis) rows.push_back(b.coords);
    SnfResult snf = smith_normal_form(IntMatrix::from_rows(rows, n));
    for (int i = 0; i < k; ++i)
      if (snf.d.at(i, i) != 1)
        throw InternalError("saturated basis has a nontrivial invariant factor");
    vmat = snf.v;
  }
  IntMatrix vinv = inverse_unimodular(vmat);

  StarFan star;
  star.projection = IntMatrix(n, n - k);
  star.covector_projection = IntMatrix(n, n - k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - k; ++j) {
      star.projection.at(i, j) = vmat.at(i, k + j);
      star.covector_projection.at(i, j) = vinv.at(k + j, i);
    }

  auto project = [&](const LatticeVector& v) {
    IntVec img(n - k, Int(0));
    for (int j = 0; j < n - k; ++j)
      for (int i = 0; i < n; ++i) img[j] += v.coords[i] * star.projection.at(i, j);
    return LatticeVector{std::move(img)};
  };

  // Maximal cones of the star are the maximal cones containing tau.
  std::vector<int> star_maximal;
  for (int id : f.maximal_ids)
    if (std::find(f.faces_of[id].begin(), f.faces_of[id].end(), tau_id) != f.faces_of[id].end())
      star_maximal.push_back(id);
  if (star_maximal.empty()) throw InternalError("cone missing from every maximal cone");

  std::vector<LatticeVector> qrays;
  std::vector<std::vector<LatticeVector>> image_rays;
  for (int id : star_maximal) {
    std::vector<LatticeVector> gens;
    for (const auto& r : f.cones[id].cone.rays) gens.push_back(project(r));
    Cone img = build_cone(gens, n - k);
    for (const auto& r : img.rays) qrays.push_back(r);
    image_rays.push_back(img.rays);
  }
  std::sort(qrays.begin(), qrays.end());
  qrays.erase(std::unique(qrays.begin(), qrays.end()), qrays.end());

  auto ray_index = [&](const LatticeVector& r) {
    auto it = std::lower_bound(qrays.begin(), qrays.end(), r);
    if (it == qrays.end() || !(*it == r)) throw InternalError("quotient ray not registered");
    return static_cast<int>(it - qrays.begin());
  };

  std::vector<std::vector<int>> qmaximal;
  for (const auto& rays : image_rays) {
    std::vector<int> ids;
    for (const auto& r : rays) ids.push_back(ray_index(r));
    std::sort(ids.begin(), ids.end());
    qmaximal.push_back(std::move(ids));
  }
  star.fan = build_fan(n - k, qrays, qmaximal, true);

  // Map every cone of the star onto its image cone in the quotient fan.
  for (int id = 0; id < static_cast<int>(f.cones.size()); ++id) {
    const auto& fo = f.faces_of[id];
    if (std::find(fo.begin(), fo.end(), tau_id) == fo.end()) continue;
    std::vector<LatticeVector> gens;
    for (const auto& r : f.cones[id].cone.rays) gens.push_back(project(r));
    Cone img = build_cone(gens, n - k);
    std::vector<int> ids;
    for (const auto& r : img.rays) ids.push_back(ray_index(r));
    std::sort(ids.begin(), ids.end());
    int qid = star.fan.id_of(ids);
    if (qid < 0) throw InternalError("image of a star cone missing from the quotient fan");
    star.cone_map[id] = qid;
  }
  return star;
}

LatticeVector project_vector(const StarFan& star, const LatticeVector& v) {
  const int n = star.projection.rows();
  const int q = star.projection.cols();
  if (v.rank() != n) throw ArityMismatch("vector of wrong rank");
  IntVec img(q, Int(0));
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < n; ++i) img[j] += v.coords[i] * star.projection.at(i, j);
  return LatticeVector{std::move(img)};
}

SupportFunction quotient_support(const SupportFunction& psi, const Fan& f, int tau_id,
                                 const StarFan& star) {
  const Fan::Entry& tau = f.entry(tau_id);
  for (const auto& r : tau.cone.rays)
    if (evaluate_support(psi, f, r) != 0)
      throw QuotientUndefined("support function does not vanish on the cone");

  const int n = f.rank;
  const int q = star.covector_projection.cols();
  std::map<int, Covector> cartier;
  for (int id : f.maximal_ids) {
    auto it = star.cone_map.find(id);
    if (it == star.cone_map.end()) continue;
    const Covector& m = psi.cartier.at(id);
    IntVec img(q, Int(0));
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < n; ++i) img[j] += m.coords[i] * star.covector_projection.at(i, j);
    Covector qm{std::move(img)};
    auto [pos, inserted] = cartier.emplace(it->second, qm);
    if (!inserted && !(pos->second == qm))
      throw InternalError("inconsistent transported Cartier data");
  }
  return make_support_function(star.fan, std::move(cartier));
}

}  // namespace toricount
