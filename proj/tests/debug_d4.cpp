#include <cstdio>

#include "moddiag/diagram.hpp"

using namespace moddiag;

int main() {
  auto a = build_algebra(group_algebra_spec(2, {{1, 2, 3, 0}, {1, 0, 3, 2}}));
  auto reg = regular_module(a);
  auto chain = radical_chain(*reg);
  std::printf("radical chain dims:");
  for (const auto& t : chain) std::printf(" %zu", t.dim());
  std::printf("\n");
  auto an = analyze_pillars(reg);
  std::printf("pillars:\n");
  for (std::size_t k = 0; k < an.pillars.size(); ++k) {
    const auto& p = an.pillars[k];
    std::printf("  [%zu] (%zu,%zu) dim %zu height %zu tag %zu\n", k, p.i, p.j, p.module->dim,
                p.height, p.iso_tag);
  }
  std::printf("colonnades:\n");
  for (std::size_t c = 0; c < an.colonnades.size(); ++c) {
    const auto& col = an.colonnades[c];
    std::printf("  [%zu] (%zu,%zu) tag %zu count %zu maximal %d\n", c, col.i, col.j, col.iso_tag,
                col.members.size(), int(col.maximal));
  }
  std::printf("below:\n");
  for (std::size_t b = 0; b < an.colonnades.size(); ++b) {
    for (std::size_t x = 0; x < an.colonnades.size(); ++x)
      std::printf("%d", int(an.below[b][x]));
    std::printf("\n");
  }
  return 0;
}
