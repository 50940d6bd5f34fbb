#include "hypent/transversal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

#include "hypent/error.hpp"
#include "hypent/fuchsian.hpp"
#include "hypent/rng.hpp"

namespace hypent {

namespace {

constexpr int kMaxShiftWindow = 4096;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("bad integer for " + what + ": '" + s + "'");
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidArgument("bad number for " + what + ": '" + s + "'");
}

double mod1(double v) {
  const double r = v - std::floor(v);
  return r >= 1.0 ? 0.0 : r;
}

ShiftPoint shifted(const ShiftPoint& p, std::int64_t j) {
  ShiftPoint q = p;
  const std::int64_t off = static_cast<std::int64_t>(p.offset) + j;
  if (off > p.W || off < -p.W) {
    throw WindowExhausted("shift window exhausted: net shift " + std::to_string(off) +
                          " exceeds W = " + std::to_string(p.W));
  }
  q.offset = static_cast<int>(off);
  return q;
}

TorusPoint cat_forward(TorusPoint p) { return {mod1(2.0 * p.x + p.y), mod1(p.x + p.y)}; }
TorusPoint cat_backward(TorusPoint p) { return {mod1(p.x - p.y), mod1(2.0 * p.y - p.x)}; }

}  // namespace

std::vector<std::string> TransversalSystem::maps() const {
  switch (kind) {
    case SystemKind::FullShift:
      return {"shift", "flip"};
    case SystemKind::CircleRotation:
      return {"rot"};
    case SystemKind::CatMap:
      return {"cat"};
    case SystemKind::FinitePermutation:
      return {"cycle"};
  }
  return {};
}

int TransversalSystem::map_order(std::size_t i) const {
  if (kind == SystemKind::FullShift && i == 1) return 2;
  if (kind == SystemKind::FinitePermutation) return n;
  return 0;
}

std::string TransversalSystem::spec() const {
  std::ostringstream out;
  switch (kind) {
    case SystemKind::FullShift:
      out << "shift:k=" << k << ",W=" << W;
      break;
    case SystemKind::CircleRotation:
      out.precision(17);
      out << "rotation:alpha=" << alpha;
      break;
    case SystemKind::CatMap:
      out << "catmap";
      break;
    case SystemKind::FinitePermutation:
      out << "perm:n=" << n;
      break;
  }
  return out.str();
}

TransversalSystem make_system(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = trim(spec.substr(0, colon));
  std::map<std::string, std::string> params;
  if (colon != std::string::npos) {
    for (const auto& item : split(spec.substr(colon + 1), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InvalidArgument("bad system parameter '" + item + "'");
      params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
  }
  auto take = [&](const std::string& key) -> std::string {
    auto it = params.find(key);
    if (it == params.end()) return "";
    std::string v = it->second;
    params.erase(it);
    return v;
  };
  TransversalSystem sys;
  if (kind == "shift") {
    sys.kind = SystemKind::FullShift;
    if (auto v = take("k"); !v.empty()) sys.k = static_cast<int>(parse_int(v, "k"));
    if (auto v = take("W"); !v.empty()) sys.W = static_cast<int>(parse_int(v, "W"));
    if (sys.k < 2 || sys.k > 255) throw InvalidArgument("shift: k must lie in [2, 255]");
    if (sys.W < 1 || sys.W > kMaxShiftWindow) throw InvalidArgument("shift: W must lie in [1, 4096]");
  } else if (kind == "rotation") {
    sys.kind = SystemKind::CircleRotation;
    const auto v = take("alpha");
    if (v.empty()) throw InvalidArgument("rotation: alpha is required");
    sys.alpha = mod1(parse_double(v, "alpha"));
  } else if (kind == "catmap") {
    sys.kind = SystemKind::CatMap;
  } else if (kind == "perm") {
    sys.kind = SystemKind::FinitePermutation;
    if (auto v = take("n"); !v.empty()) sys.n = static_cast<int>(parse_int(v, "n"));
    if (sys.n < 1) throw InvalidArgument("perm: n must be at least 1");
  } else {
    throw InvalidArgument("unknown system '" + kind + "'");
  }
  if (!params.empty()) throw InvalidArgument("unknown parameter '" + params.begin()->first + "'");
  return sys;
}

int ShiftPoint::lo() const { return std::max(-W, -W - offset); }
int ShiftPoint::hi() const { return std::min(W, W - offset); }

std::uint8_t ShiftPoint::at(int i) const {
  if (i < lo() || i > hi()) {
    throw WindowExhausted("shift coordinate " + std::to_string(i) + " outside the valid range [" +
                          std::to_string(lo()) + ", " + std::to_string(hi()) + "]");
  }
  return symbols[static_cast<std::size_t>(i + offset + W)];
}

Transform identity_transform(const TransversalSystem& sys) {
  return Transform(sys.maps().size(), 0);
}

Transform normalize(const TransversalSystem& sys, Transform t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int order = sys.map_order(i);
    if (order > 0) t[i] = ((t[i] % order) + order) % order;
  }
  return t;
}

Transform add(const TransversalSystem& sys, const Transform& x, const Transform& y) {
  Transform out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return normalize(sys, std::move(out));
}

Transform negate(const TransversalSystem& sys, const Transform& x) {
  Transform out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -x[i];
  return normalize(sys, std::move(out));
}

Point apply_map(const TransversalSystem& sys, std::size_t map, std::int64_t e, const Point& p) {
  if (e == 0) return p;
  switch (sys.kind) {
    case SystemKind::FullShift: {
      const auto& sp = std::get<ShiftPoint>(p);
      if (map == 0) return shifted(sp, e);
      if (e % 2 == 0) return p;
      ShiftPoint q = sp;
      for (auto& s : q.symbols) s = static_cast<std::uint8_t>(sys.k - 1 - s);
      return q;
    }
    case SystemKind::CircleRotation: {
      const auto& cp = std::get<CirclePoint>(p);
      return CirclePoint{mod1(cp.x + static_cast<double>(e) * sys.alpha)};
    }
    case SystemKind::CatMap: {
      TorusPoint tp = std::get<TorusPoint>(p);
      for (std::int64_t i = 0; i < std::abs(e); ++i) tp = e > 0 ? cat_forward(tp) : cat_backward(tp);
      return tp;
    }
    case SystemKind::FinitePermutation: {
      const auto& pp = std::get<PermPoint>(p);
      const std::int64_t v = ((pp.v + e) % sys.n + sys.n) % sys.n;
      return PermPoint{static_cast<int>(v)};
    }
  }
  return p;
}

Point apply(const TransversalSystem& sys, const Transform& t, const Point& p) {
  Point q = p;
  for (std::size_t i = 0; i < t.size(); ++i) q = apply_map(sys, i, t[i], q);
  return q;
}

double circle_distance(double x, double y) {
  const double d = std::fabs(x - y);
  return std::min(d, 1.0 - d);
}

double distance(const TransversalSystem& sys, const Point& p, const Point& q) {
  switch (sys.kind) {
    case SystemKind::FullShift: {
      const auto& a = std::get<ShiftPoint>(p);
      const auto& b = std::get<ShiftPoint>(q);
      const int lo = std::max(a.lo(), b.lo());
      const int hi = std::min(a.hi(), b.hi());
      const int reach = std::max(std::abs(lo), std::abs(hi));
      for (int j = 0; j <= reach; ++j) {
        for (int i : {j, -j}) {
          if (i >= lo && i <= hi && a.at(i) != b.at(i)) return std::ldexp(1.0, -j);
        }
      }
      return 0.0;
    }
    case SystemKind::CircleRotation:
      return circle_distance(std::get<CirclePoint>(p).x, std::get<CirclePoint>(q).x);
    case SystemKind::CatMap: {
      const auto& a = std::get<TorusPoint>(p);
      const auto& b = std::get<TorusPoint>(q);
      return std::max(circle_distance(a.x, b.x), circle_distance(a.y, b.y));
    }
    case SystemKind::FinitePermutation:
      return std::get<PermPoint>(p).v == std::get<PermPoint>(q).v ? 0.0 : 1.0;
  }
  return 0.0;
}

Representation identity_representation(const TransversalSystem& sys, int genus) {
  return parse_representation(sys, genus, "");
}

Representation parse_representation(const TransversalSystem& sys, int genus,
                                    const std::string& text) {
  if (genus < 1) throw InvalidArgument("representation: genus must be positive");
  Representation rep;
  rep.genus = genus;
  rep.text = text;
  rep.transforms.assign(4 * genus, identity_transform(sys));
  const auto names = sys.maps();
  for (const auto& raw : split(text, ',')) {
    const std::string item = trim(raw);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("bad assignment '" + item + "'");
    const std::string label = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    const int g = parse_generator(label, genus);
    Transform t = identity_transform(sys);
    for (const auto& factor : split(value, '*')) {
      const std::string f = trim(factor);
      const bool numeric = !f.empty() && (std::isdigit(static_cast<unsigned char>(f[0])) ||
                                          f[0] == '-' || f[0] == '+');
      if (numeric) {
        t[0] += parse_int(f, label);
        continue;
      }
      const auto caret = f.find('^');
      const std::string name = f.substr(0, caret);
      const std::int64_t e = caret == std::string::npos ? 1 : parse_int(f.substr(caret + 1), label);
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw InvalidArgument("unknown map '" + name + "' for " + sys.spec());
      t[static_cast<std::size_t>(it - names.begin())] += e;
    }
    t = normalize(sys, std::move(t));
    rep.transforms[g] = t;
    rep.transforms[inverse_generator(g)] = negate(sys, t);
  }
  rep.zcase = true;
  for (const auto& t : rep.transforms) {
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i] != 0) rep.zcase = false;
    }
  }
  if (rep.zcase) {
    for (const auto& t : rep.transforms) rep.exponents.push_back(t[0]);
  }
  return rep;
}

Transform word_transform(const TransversalSystem& sys, const Representation& rep,
                         const std::vector<int>& word) {
  Transform t = identity_transform(sys);
  for (int g : word) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += rep.of(g)[i];
  }
  return normalize(sys, std::move(t));
}

Point apply_word(const TransversalSystem& sys, const Representation& rep,
                 const std::vector<int>& word, const Point& p) {
  Point q = p;
  for (auto it = word.rbegin(); it != word.rend(); ++it) q = apply(sys, rep.of(*it), q);
  return q;
}

TorusPoint dyadic_torus_point(std::uint64_t bits_x, std::uint64_t bits_y) {
  constexpr std::uint64_t mask = (1ULL << 40) - 1;
  return {std::ldexp(static_cast<double>(bits_x & mask), -40),
          std::ldexp(static_cast<double>(bits_y & mask), -40)};
}

std::vector<Point> sample_points(const TransversalSystem& sys, std::size_t count,
                                 std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("sample_points: count must be positive");
  std::vector<Point> out;
  out.reserve(count);
  const CounterRng rng(seed, 0x7a11);
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t base = j * 0x10000ULL;
    switch (sys.kind) {
      case SystemKind::FullShift: {
        ShiftPoint p;
        p.W = sys.W;
        p.symbols.resize(2 * sys.W + 1);
        for (std::size_t i = 0; i < p.symbols.size(); ++i) {
          p.symbols[i] = static_cast<std::uint8_t>(rng.below(base + i, sys.k));
        }
        out.emplace_back(std::move(p));
        break;
      }
      case SystemKind::CircleRotation:
        out.emplace_back(CirclePoint{rng.uniform(base)});
        break;
      case SystemKind::CatMap:
        out.emplace_back(dyadic_torus_point(rng.bits(base), rng.bits(base + 1)));
        break;
      case SystemKind::FinitePermutation:
        out.emplace_back(PermPoint{static_cast<int>(rng.below(base, sys.n))});
        break;
    }
  }
  return out;
}

std::vector<Point> exhaustive_shift_points(const TransversalSystem& sys, int first, int last,
                                           std::uint64_t seed) {
  if (sys.kind != SystemKind::FullShift) throw InvalidArgument("exhaustive points need a shift");
  if (first > last || first < -sys.W || last > sys.W) {
    throw InvalidArgument("exhaustive window must lie inside [-W, W]");
  }
  const int len = last - first + 1;
  const double total = std::pow(static_cast<double>(sys.k), len);
  if (total > 1e8) throw BudgetExceeded("exhaustive shift window too large", 0.0);
  const auto count = static_cast<std::size_t>(total);
  auto out = sample_points(sys, count, seed);
  for (std::size_t j = 0; j < count; ++j) {
    auto& p = std::get<ShiftPoint>(out[j]);
    std::size_t code = j;
    for (int i = first; i <= last; ++i) {
      p.symbols[static_cast<std::size_t>(i + sys.W)] = static_cast<std::uint8_t>(code % sys.k);
      code /= sys.k;
    }
  }
  return out;
}

std::vector<Point> exhaustive_shift_points(const TransversalSystem& sys, int w,
                                           std::uint64_t seed) {
  return exhaustive_shift_points(sys, -w, w, seed);
}

}  // namespace hypent
