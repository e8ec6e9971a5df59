#include "asep/blocking_config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace asep {

namespace {

void check_cap(std::size_t n) {
  if (n > BlockingConfig::kDefectCap)
    throw std::length_error("defect list exceeds cap");
}

// Number of elements of a sorted-ascending vector that are <= x.
std::size_t count_le(const std::vector<Site>& asc, Site x) {
  return static_cast<std::size_t>(
      std::upper_bound(asc.begin(), asc.end(), x) - asc.begin());
}

// Number of elements of a sorted-descending vector that are <= x.
std::size_t count_le_desc(const std::vector<Site>& desc, Site x) {
  return static_cast<std::size_t>(
      desc.end() - std::lower_bound(desc.begin(), desc.end(), x,
                                    [](Site a, Site b) { return a > b; }));
}

}  // namespace

BlockingConfig BlockingConfig::heaviside(Site n) {
  return BlockingConfig(n, {}, {});
}

BlockingConfig BlockingConfig::from_defects(Site n, std::vector<Site> particles,
                                            std::vector<Site> holes) {
  if (particles.size() != holes.size())
    throw std::invalid_argument("defect lists must have equal length");
  check_cap(particles.size());
  for (std::size_t k = 0; k < particles.size(); ++k) {
    if (particles[k] > n)
      throw std::invalid_argument("particle defect above class index");
    if (holes[k] <= n) throw std::invalid_argument("hole defect at or below class index");
    if (k > 0 && particles[k] <= particles[k - 1])
      throw std::invalid_argument("particle list not strictly increasing");
    if (k > 0 && holes[k] >= holes[k - 1])
      throw std::invalid_argument("hole list not strictly decreasing");
  }
  return BlockingConfig(n, std::move(particles), std::move(holes));
}

BlockingConfig BlockingConfig::from_window(Site tail_class, Site lo,
                                           const std::vector<int>& bits) {
  const Site hi = lo + static_cast<Site>(bits.size()) - 1;
  auto occ = [&](Site x) -> int {
    if (x >= lo && x <= hi) return bits[static_cast<std::size_t>(x - lo)];
    return x >= tail_class + 1 ? 1 : 0;
  };
  // Particle/hole balance at the tail split determines the canonical class:
  // (#particles <= x) - (#holes > x) = x - class for every x.
  std::int64_t p = 0, h = 0;
  for (Site x = lo; x <= hi; ++x) {
    if (x <= tail_class && occ(x) == 1) ++p;
    if (x > tail_class && occ(x) == 0) ++h;
  }
  const Site cls = tail_class - (p - h);
  const Site scan_lo = std::min(lo, std::min(cls, tail_class) + 1);
  const Site scan_hi = std::max(hi, std::max(cls, tail_class));
  std::vector<Site> left, right;
  for (Site x = scan_lo; x <= scan_hi; ++x) {
    if (x <= cls && occ(x) == 1) left.push_back(x);
    if (x > cls && occ(x) == 0) right.push_back(x);
  }
  std::reverse(right.begin(), right.end());
  check_cap(left.size());
  return BlockingConfig(cls, std::move(left), std::move(right));
}

int BlockingConfig::occupancy(Site x) const {
  if (x <= class_) return std::binary_search(left_.begin(), left_.end(), x) ? 1 : 0;
  return std::binary_search(right_.begin(), right_.end(), x,
                            [](Site a, Site b) { return a > b; })
             ? 0
             : 1;
}

Site BlockingConfig::particle_position(std::size_t k) const {
  if (k < left_.size()) return left_[k];
  // (k - |left|)-th occupied site above class_, skipping hole defects.
  Site pos = class_ + 1 + static_cast<Site>(k - left_.size());
  for (auto it = right_.rbegin(); it != right_.rend(); ++it) {
    if (*it <= pos) ++pos;
  }
  return pos;
}

Site BlockingConfig::hole_position(std::size_t k) const {
  if (k < right_.size()) return right_[k];
  Site pos = class_ - static_cast<Site>(k - right_.size());
  for (auto it = left_.rbegin(); it != left_.rend(); ++it) {
    if (*it >= pos) --pos;
  }
  return pos;
}

std::int64_t BlockingConfig::interface_height(Site x) const {
  // (class - x) + 2 * #particles at sites <= x.
  std::int64_t p;
  if (x <= class_) {
    p = static_cast<std::int64_t>(count_le(left_, x));
  } else {
    p = static_cast<std::int64_t>(left_.size()) + (x - class_) -
        static_cast<std::int64_t>(count_le_desc(right_, x));
  }
  return (class_ - x) + 2 * p;
}

std::int64_t BlockingConfig::interface_height_from_right(Site x) const {
  // (x - class) + 2 * #holes at sites > x.
  std::int64_t h;
  if (x >= class_) {
    h = static_cast<std::int64_t>(right_.size()) -
        static_cast<std::int64_t>(count_le_desc(right_, x));
  } else {
    h = static_cast<std::int64_t>(right_.size()) + (class_ - x) -
        (static_cast<std::int64_t>(left_.size()) -
         static_cast<std::int64_t>(count_le(left_, x)));
  }
  return (x - class_) + 2 * h;
}

BlockingConfig BlockingConfig::swapped(Site x, Site y) const {
  if (occupancy(x) != 1) throw SwapError("no particle at source site", x);
  if (occupancy(y) != 0) throw SwapError("no hole at target site", y);
  std::vector<Site> left = left_, right = right_;
  auto toggle = [&](Site s) {
    if (s <= class_) {
      auto it = std::lower_bound(left.begin(), left.end(), s);
      if (it != left.end() && *it == s)
        left.erase(it);
      else
        left.insert(it, s);
    } else {
      auto it = std::lower_bound(right.begin(), right.end(), s,
                                 [](Site a, Site b) { return a > b; });
      if (it != right.end() && *it == s)
        right.erase(it);
      else
        right.insert(it, s);
    }
  };
  toggle(x);
  toggle(y);
  check_cap(left.size());
  check_cap(right.size());
  return BlockingConfig(class_, std::move(left), std::move(right));
}

Site BlockingConfig::window_lo() const {
  if (left_.empty() && right_.empty()) return class_ + 1;
  if (left_.empty()) return right_.back();
  if (right_.empty()) return left_.front();
  return std::min(left_.front(), right_.back());
}

Site BlockingConfig::window_hi() const {
  if (left_.empty() && right_.empty()) return class_;
  if (left_.empty()) return right_.front();
  if (right_.empty()) return left_.back();
  return std::max(left_.back(), right_.front());
}

std::string BlockingConfig::to_string() const {
  std::ostringstream os;
  os << "class=" << class_ << "; particles=[";
  for (std::size_t k = 0; k < left_.size(); ++k)
    os << (k ? "," : "") << left_[k];
  os << "]; holes=[";
  for (std::size_t k = 0; k < right_.size(); ++k)
    os << (k ? "," : "") << right_[k];
  os << "]";
  return os.str();
}

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

void expect(const std::string& s, std::size_t& i, const std::string& tok) {
  skip_ws(s, i);
  if (s.compare(i, tok.size(), tok) != 0)
    throw std::invalid_argument("expected '" + tok + "' at position " +
                                std::to_string(i));
  i += tok.size();
}

Site parse_int(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  Site v = 0;
  auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
  if (ec != std::errc())
    throw std::invalid_argument("expected integer at position " +
                                std::to_string(i));
  i = static_cast<std::size_t>(p - s.data());
  return v;
}

std::vector<Site> parse_list(const std::string& s, std::size_t& i) {
  expect(s, i, "[");
  std::vector<Site> out;
  skip_ws(s, i);
  if (i < s.size() && s[i] == ']') {
    ++i;
    return out;
  }
  for (;;) {
    out.push_back(parse_int(s, i));
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    expect(s, i, "]");
    return out;
  }
}

}  // namespace

BlockingConfig BlockingConfig::parse(const std::string& text) {
  std::size_t i = 0;
  expect(text, i, "class=");
  const Site n = parse_int(text, i);
  expect(text, i, ";");
  expect(text, i, "particles=");
  auto particles = parse_list(text, i);
  expect(text, i, ";");
  expect(text, i, "holes=");
  auto holes = parse_list(text, i);
  skip_ws(text, i);
  if (i != text.size())
    throw std::invalid_argument("trailing characters at position " +
                                std::to_string(i));
  return from_defects(n, std::move(particles), std::move(holes));
}

bool precedes(const BlockingConfig& a, const BlockingConfig& b) {
  if (a.class_index() != b.class_index()) return false;
  const Site lo = std::min(a.window_lo(), b.window_lo()) - 1;
  const Site hi = std::max(a.window_hi(), b.window_hi()) + 1;
  for (Site x = lo; x <= hi; ++x) {
    if (a.interface_height(x) > b.interface_height(x)) return false;
  }
  return true;
}

bool precedes_by_positions(const BlockingConfig& a, const BlockingConfig& b) {
  if (a.class_index() != b.class_index()) return false;
  // Beyond the combined defect counts both position sequences are in the
  // step-profile regime and coincide (equal classes), so a finite check
  // suffices.
  const std::size_t kmax =
      a.defect_count() + a.right_holes().size() + b.defect_count() +
      b.right_holes().size() + 2;
  for (std::size_t k = 0; k < kmax; ++k) {
    if (a.particle_position(k) < b.particle_position(k)) return false;
    if (a.hole_position(k) > b.hole_position(k)) return false;
  }
  return true;
}

namespace {

// All legal exchange moves (x occupied, y empty) with both sites in the
// window, any distance.
std::vector<std::pair<Site, Site>> legal_moves(const BlockingConfig& cfg,
                                               Site wlo, Site whi,
                                               bool rightward_only) {
  std::vector<std::pair<Site, Site>> moves;
  for (Site x = wlo; x <= whi; ++x) {
    if (cfg.occupancy(x) != 1) continue;
    for (Site y = wlo; y <= whi; ++y) {
      if (cfg.occupancy(y) != 0) continue;
      if (rightward_only && y < x) continue;
      moves.emplace_back(x, y);
    }
  }
  return moves;
}

}  // namespace

BlockingConfig random_config(Site n, Site wlo, Site whi, double mean_swaps,
                             RandomStream& rng) {
  BlockingConfig cfg = BlockingConfig::heaviside(n);
  const std::uint64_t count = rng.geometric(mean_swaps);
  for (std::uint64_t s = 0; s < count; ++s) {
    auto moves = legal_moves(cfg, wlo, whi, false);
    if (moves.empty()) break;
    auto [x, y] = moves[rng.below(moves.size())];
    cfg = cfg.swapped(x, y);
  }
  return cfg;
}

std::pair<BlockingConfig, BlockingConfig> random_ordered_pair(
    Site n, Site wlo, Site whi, double mean_swaps, RandomStream& rng) {
  BlockingConfig upper = random_config(n, wlo, whi, mean_swaps, rng);
  BlockingConfig lower = upper;
  const std::uint64_t count = rng.geometric(mean_swaps);
  for (std::uint64_t s = 0; s < count; ++s) {
    // Rightward moves only: each lowers the interface, keeping lower ≺ upper.
    auto moves = legal_moves(lower, wlo, whi, true);
    if (moves.empty()) break;
    auto [x, y] = moves[rng.below(moves.size())];
    lower = lower.swapped(x, y);
  }
  return {lower, upper};
}

}  // namespace asep
