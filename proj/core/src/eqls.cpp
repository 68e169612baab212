#include "toricount/eqls.hpp"

#include <algorithm>

namespace toricount {

SystemDatum make_system_datum(std::vector<Covector> support, SupportFunction psi) {
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return SystemDatum{std::move(support), std::move(psi)};
}

std::optional<DatumViolation> validate_datum(const SystemDatum& d, const Fan& f) {
  if (d.support.empty()) return DatumViolation{-1, -1, "support is empty"};
  for (size_t i = 0; i < d.support.size(); ++i)
    if (d.support[i].rank() != f.rank)
      return DatumViolation{static_cast<int>(i), -1, "character of wrong rank"};
  try {
    make_support_function(f, d.psi.cartier);
  } catch (const Error& e) {
    return DatumViolation{-1, -1, e.what()};
  }
  std::vector<Int> psi_at_ray = ray_values(d.psi, f);
  for (size_t i = 0; i < d.support.size(); ++i)
    for (size_t r = 0; r < f.rays.size(); ++r)
      if (pairing(d.support[i], f.rays[r]) + psi_at_ray[r] < 0)
        return DatumViolation{static_cast<int>(i), static_cast<int>(r),
                              "character " + to_string(d.support[i].coords) +
                                  " is not a section: negative at ray " +
                                  to_string(f.rays[r].coords)};
  return std::nullopt;
}

namespace {

bool vanishes_on_cone(const Covector& chi, const SystemDatum& d, const Fan& f,
                      const Fan::Entry& e) {
  for (const auto& r : e.cone.rays)
    if (pairing(chi, r) + evaluate_support(d.psi, f, r) != 0) return false;
  return true;
}

}  // namespace

bool degenerates_on(const SystemDatum& d, const Fan& f, int cone_id) {
  if (d.support.empty()) throw EmptySupport("system with empty support");
  const Fan::Entry& e = f.entry(cone_id);
  for (const auto& chi : d.support)
    if (vanishes_on_cone(chi, d, f, e)) return false;
  return true;
}

RestrictedSupport restrict_to_orbit(const SystemDatum& d, const Fan& f, int cone_id) {
  if (d.support.empty()) throw EmptySupport("system with empty support");
  const Fan::Entry& e = f.entry(cone_id);

  // chi and the witness vanish on the same cone iff their difference is
  // orthogonal to it, so the restricted support is exactly the set of
  // vanishing characters, recentered at the lex-least one.
  std::vector<const Covector*> vanishing;
  for (const auto& chi : d.support)
    if (vanishes_on_cone(chi, d, f, e)) vanishing.push_back(&chi);
  if (vanishing.empty())
    throw Degenerate("system degenerates on the orbit of cone " + std::to_string(cone_id));

  RestrictedSupport out;
  out.witness = *vanishing.front();  // support is sorted, so this is lex-least
  out.basis = orthogonal_complement_basis(e.cone.rays, f.rank);

  const int q = static_cast<int>(out.basis.size());
  std::vector<Covector> pts;
  pts.reserve(vanishing.size());
  for (const Covector* chi : vanishing) {
    IntVec diff(f.rank);
    for (int j = 0; j < f.rank; ++j) diff[j] = chi->coords[j] - out.witness.coords[j];
    pts.push_back(Covector{coordinates_in_sublattice(Covector{std::move(diff)}, out.basis)});
  }
  out.points = make_point_set(q, std::move(pts));
  return out;
}

SystemDatum normalize_datum(const SystemDatum& d, const Fan& f) {
  if (d.support.empty()) throw EmptySupport("system with empty support");
  const Covector& chi0 = d.support.front();
  std::vector<Covector> shifted;
  shifted.reserve(d.support.size());
  for (const auto& chi : d.support) {
    IntVec v(f.rank);
    for (int j = 0; j < f.rank; ++j) v[j] = chi.coords[j] - chi0.coords[j];
    shifted.push_back(Covector{std::move(v)});
  }
  std::map<int, Covector> cartier;
  for (const auto& [id, m] : d.psi.cartier) {
    Covector t = m;
    for (int j = 0; j < f.rank; ++j) t.coords[j] += chi0.coords[j];
    cartier[id] = std::move(t);
  }
  return SystemDatum{std::move(shifted), make_support_function(f, std::move(cartier))};
}

}  // namespace toricount
