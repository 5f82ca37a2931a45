#include "frameforge/catalog.hpp"

#include "frameforge/errors.hpp"

namespace frameforge {

std::vector<int> commuting_reflection_triple(const CoxeterSystem& sys) {
  const auto& refl = sys.reflections();
  auto commute = [&](int a, int b) { return sys.multiply(a, b) == sys.multiply(b, a); };
  for (std::size_t i = 0; i < refl.size(); ++i)
    for (std::size_t j = i + 1; j < refl.size(); ++j) {
      if (!commute(refl[i], refl[j])) continue;
      for (std::size_t k = j + 1; k < refl.size(); ++k)
        if (commute(refl[i], refl[k]) && commute(refl[j], refl[k])) return {refl[i], refl[j], refl[k]};
    }
  throw Error(ErrorCode::NotAReflection, "no commuting triple of reflections");
}

std::vector<CatalogInstance> roundtrip_catalog() {
  const ChamberComplex point3 = rank_one_building(3);
  const ChamberComplex digon = join(point3, point3);
  const ChamberComplex triple = join(digon, point3);

  const auto a1a1 = build_system("A1xA1");
  const auto c2 = build_system("C2");
  const auto h3 = build_system("H3");

  std::vector<CatalogInstance> out;
  out.push_back({"A1 in A1xA1", point3, make_embedding(a1a1, std::vector<int>{a1a1->generator(0)}), 6});
  out.push_back({"A1 in C2 (short)", point3, make_embedding(c2, std::vector<int>{c2->generator(0)}), 12});
  // The axis walls of C2: the long generator and its conjugate by the short one.
  const int axis = c2->generator(1);
  const int other_axis = c2->conjugate(c2->generator(0), axis);
  out.push_back({"A1xA1 in C2", digon, make_embedding(c2, std::vector<int>{axis, other_axis}), 18});
  out.push_back({"A1xA1xA1 in H3", triple, make_embedding(h3, commuting_reflection_triple(*h3)), 405});
  return out;
}

}  // namespace frameforge
