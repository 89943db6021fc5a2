#include "spatlang/qualitative.hpp"

#include <algorithm>

#include "spatlang/kernels.hpp"

namespace spatlang {

std::string_view rcc5_name(Rcc5Rel rel) {
  switch (rel) {
    case Rcc5Rel::DC: return "DC";
    case Rcc5Rel::PO: return "PO";
    case Rcc5Rel::PP: return "PP";
    case Rcc5Rel::PPi: return "PPi";
    case Rcc5Rel::EQ: return "EQ";
  }
  return "?";
}

std::string_view horizontal_name(AxisRel rel) {
  switch (rel) {
    case AxisRel::low: return "left";
    case AxisRel::overlaps_low: return "overlaps_left";
    case AxisRel::along_low: return "along_left";
    case AxisRel::aligned: return "horizontally_equal";
    case AxisRel::overlaps_high: return "overlaps_right";
    case AxisRel::along_high: return "along_right";
    case AxisRel::high: return "right";
  }
  return "?";
}

std::string_view depth_name(AxisRel rel) {
  switch (rel) {
    case AxisRel::low: return "closer";
    case AxisRel::overlaps_low: return "overlaps_closer";
    case AxisRel::along_low: return "along_closer";
    case AxisRel::aligned: return "distance_equal";
    case AxisRel::overlaps_high: return "overlaps_further";
    case AxisRel::along_high: return "along_further";
    case AxisRel::high: return "further";
  }
  return "?";
}

std::string_view motion_name(MotionRel rel) {
  switch (rel) {
    case MotionRel::approaching: return "approaching";
    case MotionRel::receding: return "receding";
    case MotionRel::steady: return "steady";
  }
  return "?";
}

std::string_view Fluent::relation_name() const {
  switch (family) {
    case Family::topology: return rcc5_name(rcc5());
    case Family::horizontal: return horizontal_name(axis());
    case Family::depth: return depth_name(axis());
    case Family::motion: return motion_name(motion());
  }
  return "?";
}

namespace {

Rcc5Rel rcc5_from_code(uint8_t code) {
  switch (code) {
    case kernels::kRccDC: return Rcc5Rel::DC;
    case kernels::kRccPO: return Rcc5Rel::PO;
    case kernels::kRccPP: return Rcc5Rel::PP;
    case kernels::kRccPPi: return Rcc5Rel::PPi;
    default: return Rcc5Rel::EQ;
  }
}

}  // namespace

Rcc5Rel rcc5_at(const Rect& a, const Rect& b, double eps_geo) {
  return rcc5_from_code(kernels::classify_rcc5(a.x_min, a.x_max, a.y_min, a.y_max,
                                               b.x_min, b.x_max, b.y_min, b.y_max,
                                               eps_geo));
}

OrientRel orientation_at(const Rect& a, const Rect& b, double eps_geo) {
  OrientRel o;
  o.horizontal = static_cast<AxisRel>(
      kernels::classify_axis(a.x_min, a.x_max, b.x_min, b.x_max, eps_geo));
  o.depth = static_cast<AxisRel>(
      kernels::classify_axis(a.y_min, a.y_max, b.y_min, b.y_max, eps_geo));
  return o;
}

MotionRel motion_at(const Scene& scene, std::string_view a, std::string_view b,
                    int tick, const AbstractionParams& params) {
  const int w = params.motion_window;
  if (tick - w < 0 || tick + w >= scene.n_ticks) return MotionRel::steady;
  const double before = centroid_distance(scene, a, b, tick - w);
  const double after = centroid_distance(scene, a, b, tick + w);
  if (after < before - params.v_eps) return MotionRel::approaching;
  if (after > before + params.v_eps) return MotionRel::receding;
  return MotionRel::steady;
}

namespace {

// Per-tick footprint bounds and centers of one entity, SoA.
struct EntitySeries {
  std::vector<double> xlo, xhi, ylo, yhi, cx, cy;

  void build(const Entity& e, int n_ticks) {
    xlo.resize(n_ticks);
    xhi.resize(n_ticks);
    ylo.resize(n_ticks);
    yhi.resize(n_ticks);
    cx.resize(n_ticks);
    cy.resize(n_ticks);
    if (e.is_block()) {
      for (int t = 0; t < n_ticks; ++t) {
        const ObjectState& s = e.track[static_cast<size_t>(t)];
        const double hw = s.w * 0.5, hh = s.h * 0.5;
        xlo[t] = s.x - hw;
        xhi[t] = s.x + hw;
        ylo[t] = s.y - hh;
        yhi[t] = s.y + hh;
        cx[t] = s.x;
        cy[t] = s.y;
      }
    } else {
      const Vec2 c = e.rect.center();
      for (int t = 0; t < n_ticks; ++t) {
        xlo[t] = e.rect.x_min;
        xhi[t] = e.rect.x_max;
        ylo[t] = e.rect.y_min;
        yhi[t] = e.rect.y_max;
        cx[t] = c.x;
        cy[t] = c.y;
      }
    }
  }
};

void append_runs(std::vector<Fluent>& out, const std::vector<uint8_t>& codes,
                 Family family, const std::string& a, const std::string& b) {
  const int n = static_cast<int>(codes.size());
  int run_start = 0;
  for (int t = 1; t <= n; ++t) {
    if (t == n || codes[t] != codes[run_start]) {
      out.push_back({family, static_cast<int>(codes[run_start]), a, b,
                     {run_start, t - 1}});
      run_start = t;
    }
  }
}

// Kernel code values line up with the public enums.
static_assert(kernels::kRccDC == static_cast<int>(Rcc5Rel::DC));
static_assert(kernels::kRccEQ == static_cast<int>(Rcc5Rel::EQ));
static_assert(kernels::kAxisLow == static_cast<int>(AxisRel::low));
static_assert(kernels::kAxisHigh == static_cast<int>(AxisRel::high));

}  // namespace

std::vector<Fluent> extract_fluents(const Scene& scene, const AbstractionParams& params) {
  const int n = scene.n_ticks;
  const auto& k = kernels::active_dispatch();

  // Subjects are blocks; reference entities are everything else plus the
  // other blocks. Deterministic pair order by id.
  std::vector<const Entity*> order;
  for (const Entity& e : scene.entities) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const Entity* x, const Entity* y) { return x->id < y->id; });

  std::vector<EntitySeries> series(order.size());
  for (size_t i = 0; i < order.size(); ++i) series[i].build(*order[i], n);

  std::vector<Fluent> out;
  std::vector<uint8_t> codes(static_cast<size_t>(n));
  std::vector<double> dist(static_cast<size_t>(n));
  // Motion coding resolves per tick into approaching=1/receding=2/steady=0;
  // remap so run extraction sees the public enum values.
  std::vector<uint8_t> motion(static_cast<size_t>(n));

  for (size_t i = 0; i < order.size(); ++i) {
    if (!order[i]->is_block()) continue;
    const EntitySeries& sa = series[i];
    for (size_t j = 0; j < order.size(); ++j) {
      if (i == j) continue;
      const EntitySeries& sb = series[j];
      const std::string& a = order[i]->id;
      const std::string& b = order[j]->id;

      k.rcc5(sa.xlo.data(), sa.xhi.data(), sa.ylo.data(), sa.yhi.data(),
             sb.xlo.data(), sb.xhi.data(), sb.ylo.data(), sb.yhi.data(),
             static_cast<size_t>(n), params.eps_geo, codes.data());
      append_runs(out, codes, Family::topology, a, b);

      k.axis(sa.xlo.data(), sa.xhi.data(), sb.xlo.data(), sb.xhi.data(),
             static_cast<size_t>(n), params.eps_geo, codes.data());
      append_runs(out, codes, Family::horizontal, a, b);

      k.axis(sa.ylo.data(), sa.yhi.data(), sb.ylo.data(), sb.yhi.data(),
             static_cast<size_t>(n), params.eps_geo, codes.data());
      append_runs(out, codes, Family::depth, a, b);

      k.dist(sa.cx.data(), sa.cy.data(), sb.cx.data(), sb.cy.data(),
             static_cast<size_t>(n), dist.data());
      kernels::motion_codes(dist.data(), static_cast<size_t>(n),
                            params.motion_window, params.v_eps, motion.data());
      for (int t = 0; t < n; ++t) {
        switch (motion[t]) {
          case kernels::kMotionApproaching:
            codes[t] = static_cast<uint8_t>(MotionRel::approaching);
            break;
          case kernels::kMotionReceding:
            codes[t] = static_cast<uint8_t>(MotionRel::receding);
            break;
          default:
            codes[t] = static_cast<uint8_t>(MotionRel::steady);
        }
      }
      append_runs(out, codes, Family::motion, a, b);
    }
  }

  // append_runs emits grouped by (pair, family) already; normalize the
  // global order to (args, family, start).
  std::stable_sort(out.begin(), out.end(), [](const Fluent& x, const Fluent& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.family != y.family) return static_cast<int>(x.family) < static_cast<int>(y.family);
    return x.interval.start < y.interval.start;
  });
  return out;
}

std::string fluent_json_line(const Fluent& f) {
  std::string s = "{\"rel\": \"";
  s += f.relation_name();
  s += "\", \"args\": [\"";
  s += f.a;
  s += "\", \"";
  s += f.b;
  s += "\"], \"interval\": [";
  s += std::to_string(f.interval.start);
  s += ", ";
  s += std::to_string(f.interval.end);
  s += "]}";
  return s;
}

}  // namespace spatlang
