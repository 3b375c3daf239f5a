#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "covals/dsl.hpp"
#include "covals/error.hpp"
#include "covals/poly.hpp"

namespace covals::dsl {

namespace {

struct Root {
  double p = 0.0;
  bool singular = false;  // dF/dp vanishes: the envelope point is undefined
  EnvelopePoint point;
};

double pole_radius(const Node& n) {
  double r = std::abs(n.value);
  if (n.lhs) r = std::max(r, pole_radius(*n.lhs));
  if (n.rhs) r = std::max(r, pole_radius(*n.rhs));
  return r;
}

// Real roots of F(theta, .) in ascending order, or nullopt when F does not
// depend on p at this angle.
std::optional<std::vector<Root>> roots_at(const Expr& e, double theta, std::vector<double>* singular) {
  std::vector<double> c = polynomial_in_p(e, theta);
  double peak = 0.0;
  for (double x : c) peak = std::max(peak, std::abs(x));
  while (!c.empty() && std::abs(c.back()) <= 1e-12 * peak) c.pop_back();
  if (c.size() < 2) return std::nullopt;

  CVector coeffs(c.begin(), c.end());
  const CVector all = uni_roots(UniPoly(coeffs));
  double scale = 1.0;
  for (const auto& z : all) scale = std::max(scale, std::abs(z));

  std::vector<Root> out;
  for (const auto& z : all) {
    if (std::abs(z.imag()) > 1e-8 * scale) continue;
    Root r;
    r.p = z.real();
    const TangentLine line(theta, r.p);
    const Gradient g = gradient_on_line(e, line);
    double dp_scale = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k)
      dp_scale += static_cast<double>(k) * std::abs(c[k]) * std::pow(std::abs(r.p), static_cast<double>(k - 1));
    if (std::abs(g.d_p) <= 1e-6 * dp_scale) {
      r.singular = true;
      singular->push_back(theta);
    } else {
      const double dp = -g.d_theta / g.d_p;
      r.point = {theta, r.p, dp, envelope_point(theta, r.p, dp)};
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.p < b.p; });
  return out;
}

struct Track {
  std::vector<Root> roots;
  int first_sample = 0;
  int last_sample = 0;
};

}  // namespace

Envelope envelope(const Expr& e, int theta_samples, Branch branch) {
  if (theta_samples < 64) throw Error(ErrorCode::InvalidArgument, "envelope: need at least 64 theta samples");
  if (e.has_point_domain_atoms()) {
    throw Error(ErrorCode::PointDomainAtomInLineContext, "envelope: r(...) and pc(...) cannot be used for line families");
  }

  Envelope out;
  const double h = 2.0 * kPi / theta_samples;
  const double radius = std::max(1.0, pole_radius(e.root()));

  std::vector<Track> done;
  std::vector<Track> active;
  for (int i = 0; i < theta_samples; ++i) {
    const double theta = h * i;
    auto found = roots_at(e, theta, &out.singular_thetas);
    if (!found) {
      out.degenerate_thetas.push_back(theta);
      for (auto& t : active) done.push_back(std::move(t));
      active.clear();
      continue;
    }
    std::vector<Root> roots = std::move(*found);
    if (branch == Branch::Max && !roots.empty()) roots = {roots.back()};
    if (branch == Branch::Min && !roots.empty()) roots = {roots.front()};

    // Greedy nearest matching of continuing tracks to this sample's roots.
    struct Pair {
      double dist;
      std::size_t track, root;
    };
    std::vector<Pair> pairs;
    for (std::size_t t = 0; t < active.size(); ++t)
      for (std::size_t r = 0; r < roots.size(); ++r) {
        const double last = active[t].roots.back().p;
        const double jump = 10.0 * h * std::max({radius, std::abs(last), std::abs(roots[r].p)});
        const double d = std::abs(roots[r].p - last);
        if (d <= jump) pairs.push_back({d, t, r});
      }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
    std::vector<bool> track_used(active.size()), root_used(roots.size());
    for (const auto& pr : pairs) {
      if (track_used[pr.track] || root_used[pr.root]) continue;
      track_used[pr.track] = root_used[pr.root] = true;
      active[pr.track].roots.push_back(roots[pr.root]);
      active[pr.track].last_sample = i;
    }
    std::vector<Track> next;
    for (std::size_t t = 0; t < active.size(); ++t) (track_used[t] ? next : done).push_back(std::move(active[t]));
    for (std::size_t r = 0; r < roots.size(); ++r)
      if (!root_used[r]) next.push_back({{roots[r]}, i, i});
    active = std::move(next);
  }

  // Join tracks across theta = 2 pi.
  std::vector<bool> closed(active.size(), false);
  std::vector<Track> starting;
  for (auto it = done.begin(); it != done.end();) {
    if (it->first_sample == 0) {
      starting.push_back(std::move(*it));
      it = done.erase(it);
    } else {
      ++it;
    }
  }
  // Tracks still active at the end that also began at sample 0 are loops.
  for (std::size_t t = 0; t < active.size(); ++t) {
    Track& tr = active[t];
    const double last = tr.roots.back().p;
    const double jump = 10.0 * h * std::max(radius, std::abs(last));
    if (tr.first_sample == 0 && std::abs(tr.roots.front().p - last) <= jump && tr.roots.size() == static_cast<std::size_t>(theta_samples)) {
      closed[t] = true;
      continue;
    }
    // Otherwise try to continue into a track that started at sample 0.
    std::size_t best = starting.size();
    double best_d = jump;
    for (std::size_t s = 0; s < starting.size(); ++s) {
      const double d = std::abs(starting[s].roots.front().p - last);
      if (d <= best_d) {
        best_d = d;
        best = s;
      }
    }
    if (best < starting.size()) {
      tr.roots.insert(tr.roots.end(), starting[best].roots.begin(), starting[best].roots.end());
      starting.erase(starting.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }
  for (auto& t : starting) done.push_back(std::move(t));

  std::vector<std::pair<Track, bool>> all;
  for (auto& t : done) all.emplace_back(std::move(t), false);
  for (std::size_t t = 0; t < active.size(); ++t) all.emplace_back(std::move(active[t]), closed[t]);
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.first.first_sample != b.first.first_sample) return a.first.first_sample < b.first.first_sample;
    return a.first.roots.front().p < b.first.roots.front().p;
  });

  for (auto& [track, is_closed] : all) {
    EnvelopeBranch b;
    b.closed = is_closed;
    for (const auto& r : track.roots)
      if (!r.singular) b.points.push_back(r.point);
    if (b.points.empty()) continue;
    b.id = static_cast<int>(out.branches.size());
    out.branches.push_back(std::move(b));
  }
  std::sort(out.singular_thetas.begin(), out.singular_thetas.end());
  out.singular_thetas.erase(std::unique(out.singular_thetas.begin(), out.singular_thetas.end()), out.singular_thetas.end());

  if (out.degenerate_thetas.size() == static_cast<std::size_t>(theta_samples)) {
    throw Error(ErrorCode::DegenerateInP, "envelope: the expression does not depend on p");
  }
  return out;
}

}  // namespace covals::dsl
