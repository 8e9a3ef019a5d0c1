#ifndef DIGITOP_HOMOTOPY_HPP_
#define DIGITOP_HOMOTOPY_HPP_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "digitop/image.hpp"

namespace digitop {

/// A total function from an image's points to the points of `codomain`
/// (the domain itself for self-maps); table[x] = f(x).
class SelfMap {
 public:
  SelfMap(const DigitalImage& domain, std::vector<std::size_t> table);
  SelfMap(const DigitalImage& domain, const DigitalImage& codomain,
          std::vector<std::size_t> table);

  const DigitalImage& domain() const noexcept { return *domain_; }
  const DigitalImage& codomain() const noexcept { return *codomain_; }
  std::span<const std::size_t> table() const noexcept { return table_; }
  std::size_t operator()(std::size_t x) const { return table_[x]; }

  Mask image_set() const noexcept;
  bool is_surjective() const noexcept { return image_set() == codomain_->all_points(); }
  bool is_identity() const noexcept;
  bool has_fixed_point() const noexcept;

 private:
  const DigitalImage* domain_;
  const DigitalImage* codomain_;
  std::vector<std::size_t> table_;
};

/// Adjacent points go to equal or adjacent points.
bool is_continuous(const SelfMap& f);

/// One complete map produced by the one-step search.
struct OneStepMap {
  std::span<const std::size_t> table;
  Mask image;                // f(X) as a label set
  std::size_t fixed_points;  // #{x : f(x) = x}

  bool is_identity() const noexcept { return fixed_points == table.size(); }
  bool is_surjective(std::size_t n) const noexcept { return image == low_bits(n); }
};

namespace detail {

class OneStepSearch {
 public:
  OneStepSearch(const DigitalImage& image, Mask forbidden);

  template <class Visitor>
  bool run(Visitor& visit) {
    return step(0, 0, 0, visit);
  }

 private:
  template <class Visitor>
  bool step(std::size_t depth, Mask image, std::size_t fixed, Visitor& visit) {
    if (depth == n_) {
      return visit(OneStepMap{std::span<const std::size_t>(table_.data(), n_),
                              image, fixed});
    }
    const std::size_t x = order_[depth];
    Mask candidates = allowed_[x];
    for (Mask prev = earlier_[depth]; prev; prev &= prev - 1) {
      const auto y = static_cast<std::size_t>(std::countr_zero(prev));
      candidates &= closed_[table_[y]];
    }
    for (; candidates; candidates &= candidates - 1) {
      const auto fx = static_cast<std::size_t>(std::countr_zero(candidates));
      table_[x] = fx;
      if (!step(depth + 1, image | bit(fx), fixed + (fx == x ? 1 : 0), visit)) {
        return false;
      }
    }
    return true;
  }

  std::size_t n_;
  std::array<std::size_t, kMaxPoints> order_{};
  std::array<Mask, kMaxPoints> earlier_{};  // assigned neighbors of order_[d]
  std::array<Mask, kMaxPoints> allowed_{};  // N[x] minus forbidden values
  std::array<Mask, kMaxPoints> closed_{};   // N[y]
  std::array<std::size_t, kMaxPoints> table_{};
};

}  // namespace detail

/// Streams every continuous f with f(x) in N[x] for all x, i.e. every map
/// homotopic to the identity in one step, identity included. Points are
/// assigned in breadth-first order from label 0 and a branch is cut as soon
/// as an assigned adjacent pair violates continuity. Values in `forbidden`
/// are excluded from the codomain, which restricts the stream to maps
/// missing those points. `visit` returns false to stop; the function
/// returns false iff it was stopped.
template <class Visitor>
bool visit_one_step_maps(const DigitalImage& image, Visitor&& visit,
                         Mask forbidden = 0) {
  detail::OneStepSearch search(image, forbidden);
  return search.run(visit);
}

std::vector<SelfMap> one_step_identity_maps(const DigitalImage& image);

struct Classification {
  bool reducible = false;
  bool pointed_reducible = false;
  bool rigid = false;

  bool irreducible() const noexcept { return !reducible; }
  bool pointed_irreducible() const noexcept { return !pointed_reducible; }
  /// "rigid", "irreducible non-rigid", "pointed-irreducible reducible" or
  /// "pointed-reducible".
  std::string_view label() const noexcept;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Throws ContractError for a disconnected image.
Classification classify(const DigitalImage& image);

enum class ReductionPolicy {
  kLeastImage,    // witness whose image set is lexicographically least
  kFirstWitness,  // first non-surjection in stream order
  kLastWitness,   // last non-surjection in stream order
};

/// Repeatedly restricts to f(X) for a non-surjective one-step map f until no
/// such map exists. The result is irreducible, connected and homotopy
/// equivalent to the input. Throws ContractError for a disconnected image.
DigitalImage reduce_to_core(const DigitalImage& image,
                            ReductionPolicy policy = ReductionPolicy::kLeastImage);

/// Cores are compared up to isomorphism; irreducible images are homotopy
/// equivalent exactly when they are isomorphic.
bool homotopy_equivalent(const DigitalImage& a, const DigitalImage& b);

}  // namespace digitop

#endif  // DIGITOP_HOMOTOPY_HPP_
