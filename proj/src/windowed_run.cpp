#include "clusterflow/windowed_run.hpp"

#include <algorithm>
#include <stdexcept>

namespace clusterflow {

WindowedRun::WindowedRun(const PeriodicBandedMatrix& rule, int lo, int hi, SemifieldTag tag, bool track_x,
                         const InitialY& init_y)
    : exact_(rule) {
  if (hi < lo) throw std::invalid_argument("empty window");
  seed_ = initial_seed(rule.materialize(lo, hi), tag, track_x);
  if (init_y) {
    for (int i = lo; i <= hi; ++i) {
      CoefValue v = init_y(i);
      if (tag_of(v) != tag) throw SemifieldMismatch("initial coefficient of the wrong semifield");
      seed_.y_at(i) = std::move(v);
    }
  }
  x_live_ = track_x;
  x_ok_.assign(static_cast<std::size_t>(hi - lo + 1), track_x ? 1 : 0);
  y_ok_.assign(static_cast<std::size_t>(hi - lo + 1), 1);
  band0_ = rule.band();
}

bool WindowedRun::column_safe(int k) const {
  if (!seed_.b.contains(k)) return false;
  const int w = exact_.band();
  for (int j = k - w; j <= k + w; ++j) {
    if (exact_(j, k) != 0 && !seed_.b.contains(j)) return false;
  }
  for (int j = lo(); j <= hi(); ++j) {
    if (seed_.b(j, k) != exact_(j, k)) return false;
  }
  return true;
}

const RatFunc& WindowedRun::x(int i) const {
  if (!x_safe(i)) throw std::logic_error("x_" + std::to_string(i) + " is outside the certified window");
  return seed_.x_at(i);
}

const CoefValue& WindowedRun::y(int i) const {
  if (!y_safe(i)) throw std::logic_error("y_" + std::to_string(i) + " is outside the certified window");
  if (pool_ != nullptr) throw std::logic_error("coefficients are kept in factored form");
  return seed_.y_at(i);
}

const Factored& WindowedRun::y_factored(int i) const {
  if (!y_safe(i)) throw std::logic_error("y_" + std::to_string(i) + " is outside the certified window");
  if (pool_ == nullptr) throw std::logic_error("coefficients are not factored");
  return fy_[off(i)];
}

void WindowedRun::use_factored_coefficients(AtomPool& pool) {
  if (seed_.tag != SemifieldTag::universal) throw SemifieldMismatch("factored coefficients need the universal semifield");
  if (pool_ != nullptr) return;
  pool_ = &pool;
  fy_.resize(seed_.y.size());
  for (int i = lo(); i <= hi(); ++i) {
    if (y_safe(i)) fy_[off(i)] = pool.factor(std::get<RatFunc>(seed_.y_at(i)));
  }
}

bool WindowedRun::margin_safe(int i) const {
  if (!seed_.b.contains(i)) return false;
  return std::min(i - lo(), hi() - i) >= depth_ * band0_;
}

std::pair<int, int> WindowedRun::x_frontier() const {
  int a = hi() + 1, b = lo() - 1;
  for (int i = lo(); i <= hi(); ++i) {
    if (x_safe(i)) {
      a = std::min(a, i);
      b = std::max(b, i);
    }
  }
  return {a, b};
}

void WindowedRun::mutate_class(int r) {
  r = exact_.residue(r);
  const PeriodicBandedMatrix next = exact_.mutate_class(r);  // also validates commutation
  const int w = exact_.band();
  std::vector<int> ks;
  for (int k = lo(); k <= hi(); ++k) {
    if (exact_.residue(k) == r) ks.push_back(k);
  }

  // Safety of the new values is decided on the pre-mutation seed; within a
  // commuting class no mutation touches the data another one reads.
  std::vector<char> x_new(x_ok_), y_new(y_ok_);
  for (int k : ks) {
    bool ok = seed_.track_x && x_safe(k) && y_safe(k) && column_safe(k);
    for (int j = lo(); ok && j <= hi(); ++j) {
      if (seed_.b(j, k) != 0 && !x_safe(j)) ok = false;
    }
    x_new[off(k)] = ok;
  }
  for (int i = lo(); i <= hi(); ++i) {
    if (exact_.residue(i) == r) continue;
    bool ok = y_safe(i);
    for (int k = i - w; ok && k <= i + w; ++k) {
      if (exact_.residue(k) != r || exact_(k, i) == 0) continue;
      ok = seed_.b.contains(k) && y_safe(k) && seed_.b(k, i) == exact_(k, i);
    }
    y_new[off(i)] = ok;
  }

  if (!x_live_) {
    for (int k : ks) x_new[off(k)] = 0;
  }
  std::vector<RatFunc> xs;
  for (int k : ks) {
    if (!x_new[off(k)]) {
      xs.emplace_back();
      continue;
    }
    if (pool_ != nullptr) seed_.y_at(k) = pool_->to_ratfunc(fy_[off(k)]);
    xs.push_back(exchange_x(seed_, k));
  }
  for (int k : ks) {
    if (pool_ != nullptr) {
      if (!y_ok_[off(k)]) continue;
      const Factored& yk = fy_[off(k)];
      Factored sum = pool_->one_plus(yk);
      Factored ratio = yk / sum;
      for (int i = lo(); i <= hi(); ++i) {
        int bki = seed_.b(k, i);
        if (bki == 0 || !y_new[off(i)]) continue;
        fy_[off(i)] = fy_[off(i)] * (bki > 0 ? pow(ratio, bki) : pow(sum, -bki));
      }
      continue;
    }
    for (int i = lo(); i <= hi(); ++i) {
      int bki = seed_.b(k, i);
      if (bki == 0 || !y_new[off(i)]) continue;
      seed_.y_at(i) = mutated_coefficient(seed_.tag, seed_.y_at(i), seed_.y_at(k), bki);
    }
  }
  for (std::size_t a = 0; a < ks.size(); ++a) {
    int k = ks[a];
    if (y_ok_[off(k)]) {
      if (pool_ != nullptr) {
        fy_[off(k)] = inverse(fy_[off(k)]);
      } else {
        seed_.y_at(k) = semifield_pow(seed_.y_at(k), -1);
      }
    }
    if (seed_.track_x) seed_.x_at(k) = std::move(xs[a]);
    seed_.b = mutate_matrix(seed_.b, k);
  }
  x_ok_ = std::move(x_new);
  y_ok_ = std::move(y_new);
  exact_ = next;
  ++depth_;
}

}  // namespace clusterflow
