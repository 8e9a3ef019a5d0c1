#include "digitop/homotopy.hpp"

#include <optional>

#include "digitop/canonical.hpp"
#include "digitop/error.hpp"

namespace digitop {

SelfMap::SelfMap(const DigitalImage& domain, std::vector<std::size_t> table)
    : SelfMap(domain, domain, std::move(table)) {}

SelfMap::SelfMap(const DigitalImage& domain, const DigitalImage& codomain,
                 std::vector<std::size_t> table)
    : domain_(&domain), codomain_(&codomain), table_(std::move(table)) {
  if (table_.size() != domain.size()) {
    throw ContractError("map table length differs from domain size");
  }
  for (std::size_t v : table_) {
    if (v >= codomain.size()) throw ContractError("map value out of range");
  }
}

Mask SelfMap::image_set() const noexcept {
  Mask m = 0;
  for (std::size_t v : table_) m |= bit(v);
  return m;
}

bool SelfMap::is_identity() const noexcept {
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (table_[x] != x) return false;
  }
  return true;
}

bool SelfMap::has_fixed_point() const noexcept {
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (table_[x] == x) return true;
  }
  return false;
}

bool is_continuous(const SelfMap& f) {
  const DigitalImage& x = f.domain();
  const DigitalImage& y = f.codomain();
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (Mask r = x.neighbors(a); r; r &= r - 1) {
      const auto b = static_cast<std::size_t>(std::countr_zero(r));
      if (!(y.closed_neighborhood(f(a)) & bit(f(b)))) return false;
    }
  }
  return true;
}

namespace detail {

OneStepSearch::OneStepSearch(const DigitalImage& image, Mask forbidden)
    : n_(image.size()) {
  const auto order = breadth_first_order(image);
  Mask assigned = 0;
  for (std::size_t d = 0; d < n_; ++d) {
    const std::size_t x = order[d];
    order_[d] = x;
    earlier_[d] = image.neighbors(x) & assigned;
    assigned |= bit(x);
    allowed_[x] = image.closed_neighborhood(x) & ~forbidden;
    closed_[x] = image.closed_neighborhood(x);
  }
}

}  // namespace detail

std::vector<SelfMap> one_step_identity_maps(const DigitalImage& image) {
  std::vector<SelfMap> maps;
  visit_one_step_maps(image, [&](const OneStepMap& m) {
    maps.emplace_back(image, std::vector<std::size_t>(m.table.begin(), m.table.end()));
    return true;
  });
  return maps;
}

std::string_view Classification::label() const noexcept {
  if (rigid) return "rigid";
  if (!reducible) return "irreducible non-rigid";
  if (!pointed_reducible) return "pointed-irreducible reducible";
  return "pointed-reducible";
}

namespace {

void require_connected(const DigitalImage& image, const char* what) {
  if (!is_connected(image)) {
    throw ContractError(std::string(what) + " requires a connected image");
  }
}

}  // namespace

// A map misses y iff it is non-surjective for that y, so searching with y
// removed from the codomain finds exactly the non-surjections missing y;
// taking every y covers all non-surjections with far tighter pruning than
// filtering the unrestricted stream.
Classification classify(const DigitalImage& image) {
  require_connected(image, "classify");
  Classification c;
  const std::size_t n = image.size();
  for (std::size_t y = 0; y < n && !c.pointed_reducible; ++y) {
    visit_one_step_maps(
        image,
        [&](const OneStepMap& m) {
          c.reducible = true;
          if (m.fixed_points > 0) {
            c.pointed_reducible = true;
            return false;
          }
          return true;
        },
        bit(y));
  }
  if (!c.reducible) {
    bool only_identity = true;
    visit_one_step_maps(image, [&](const OneStepMap& m) {
      if (!m.is_identity()) only_identity = false;
      return only_identity;
    });
    c.rigid = only_identity;
  }
  return c;
}

namespace {

// Lexicographic order of the sorted label lists; a proper prefix is smaller.
bool lex_less(Mask a, Mask b) {
  while (a && b) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

std::optional<Mask> reduction_witness(const DigitalImage& image,
                                      ReductionPolicy policy) {
  const std::size_t n = image.size();
  std::optional<Mask> chosen;
  switch (policy) {
    case ReductionPolicy::kLeastImage:
      for (std::size_t y = 0; y < n; ++y) {
        visit_one_step_maps(
            image,
            [&](const OneStepMap& m) {
              if (!chosen || lex_less(m.image, *chosen)) chosen = m.image;
              return true;
            },
            bit(y));
      }
      break;
    case ReductionPolicy::kFirstWitness:
      visit_one_step_maps(image, [&](const OneStepMap& m) {
        if (m.is_surjective(n)) return true;
        chosen = m.image;
        return false;
      });
      break;
    case ReductionPolicy::kLastWitness:
      visit_one_step_maps(image, [&](const OneStepMap& m) {
        if (!m.is_surjective(n)) chosen = m.image;
        return true;
      });
      break;
  }
  return chosen;
}

}  // namespace

DigitalImage reduce_to_core(const DigitalImage& image, ReductionPolicy policy) {
  require_connected(image, "reduce_to_core");
  DigitalImage current = image;
  while (auto witness = reduction_witness(current, policy)) {
    current = current.induced(*witness);
  }
  return current;
}

bool homotopy_equivalent(const DigitalImage& a, const DigitalImage& b) {
  return are_isomorphic(reduce_to_core(a), reduce_to_core(b));
}

}  // namespace digitop
