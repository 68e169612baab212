#include "toricount/counting.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace toricount {

std::vector<std::vector<int>> degeneracy_profile(const std::vector<SystemDatum>& data,
                                                 const Fan& f) {
  std::vector<std::vector<int>> profile(f.cones.size());
  for (size_t c = 0; c < f.cones.size(); ++c)
    for (size_t i = 0; i < data.size(); ++i)
      if (degenerates_on(data[i], f, static_cast<int>(c)))
        profile[c].push_back(static_cast<int>(i));
  return profile;
}

std::vector<long> d_values(const std::vector<std::vector<int>>& profile, const Fan& f) {
  if (profile.size() != f.cones.size())
    throw ArityMismatch("profile does not match the fan");
  std::vector<long> dv(f.cones.size());
  for (size_t c = 0; c < f.cones.size(); ++c)
    dv[c] = static_cast<long>(profile[c].size()) - f.cones[c].cone.dim;
  return dv;
}

std::vector<int> selected_cones(const std::vector<long>& dvals, const Fan& f) {
  if (dvals.size() != f.cones.size())
    throw ArityMismatch("d-values do not match the fan");
  std::vector<int> sel;
  for (size_t c = 0; c < f.cones.size(); ++c) {
    bool ok = true;
    for (int face : f.faces_of[c])
      if (dvals[face] > dvals[c]) {
        ok = false;
        break;
      }
    if (ok) sel.push_back(static_cast<int>(c));
  }
  return sel;
}

ComponentReport count_components(const std::vector<SystemDatum>& data, const Fan& f,
                                 int threads) {
  for (size_t i = 0; i < data.size(); ++i)
    if (auto v = validate_datum(data[i], f))
      throw InvariantViolation("system " + std::to_string(i) + ": " + v->message);

  std::vector<std::vector<int>> profile = degeneracy_profile(data, f);
  std::vector<long> dvals = d_values(profile, f);
  std::vector<int> sel = selected_cones(dvals, f);

  // Self-checks: degeneracy is monotone along the face relation, the dense
  // orbit never degenerates anything, and it is always selected.
  for (size_t c = 0; c < f.cones.size(); ++c)
    for (int face : f.faces_of[c])
      if (!std::includes(profile[c].begin(), profile[c].end(), profile[face].begin(),
                         profile[face].end()))
        throw InternalError("degeneracy is not monotone between a cone and its face");
  if (dvals[f.zero_cone_id()] != 0)
    throw InternalError("nonzero d-value on the zero cone");
  if (!std::binary_search(sel.begin(), sel.end(), f.zero_cone_id()))
    throw InternalError("zero cone not selected");

  ComponentReport report;
  report.rank = f.rank;
  report.records.resize(f.cones.size());
  for (size_t c = 0; c < f.cones.size(); ++c) {
    OrbitRecord& r = report.records[c];
    r.cone_id = static_cast<int>(c);
    r.cone_dim = f.cones[c].cone.dim;
    r.orbit_dim = f.rank - r.cone_dim;
    r.degenerate = profile[c];
    r.d_value = dvals[c];
  }
  for (int c : sel) report.records[c].selected = true;

  auto process = [&](int c) {
    OrbitRecord& r = report.records[c];
    std::vector<PointSet> family;
    for (size_t i = 0; i < data.size(); ++i) {
      if (std::binary_search(r.degenerate.begin(), r.degenerate.end(), static_cast<int>(i)))
        continue;
      RestrictedSupport rs = restrict_to_orbit(data[i], f, c);
      family.push_back(rs.points);
      r.restricted.emplace_back(static_cast<int>(i), std::move(rs));
    }
    r.k = k_torus(family);
    r.contribution = r.k->value;
    if (r.contribution > 0 && r.orbit_dim < static_cast<long>(family.size()))
      throw InternalError("positive count on an orbit of negative expected dimension");
  };

  if (threads > 1 && sel.size() > 1) {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_lock;
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= sel.size()) return;
        try {
          process(sel[i]);
        } catch (...) {
          std::lock_guard<std::mutex> g(error_lock);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    const size_t n = std::min<size_t>(threads, sel.size());
    pool.reserve(n);
    for (size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  } else {
    for (int c : sel) process(c);
  }

  for (int c : sel) report.total += report.records[c].contribution;
  return report;
}

}  // namespace toricount
