// A walk through the simplicial staircase construction: build one staircase
// of unit-column inclusions, apply face and degeneracy operators, translate
// everything to pointed sets with a unit-group action, and finish with the
// census that counts staircases on both sides of the dictionary.

#include <cstdio>
#include <string>
#include <vector>

#include "octak/octak.hpp"

namespace {

using namespace octak;

std::string rank_list(const StaircaseObject& s) {
  std::string out = "(";
  for (size_t i = 0; i < s.ranks().size(); ++i)
    out += (i ? ", " : "") + std::to_string(s.ranks()[i]);
  return out + ")";
}

std::string cert_text(const CofibCertificate& c) {
  if (c.n_from == 0) return "0 >-> O(" + std::to_string(c.n_to) + ")";
  std::string out;
  for (size_t i = 0; i < c.n_from; ++i) {
    if (i) out += ", ";
    out += "e" + std::to_string(i) + " -> ";
    if (c.units[i] == fe_one(c.field))
      out += "+";
    else if (c.units[i] == -fe_one(c.field))
      out += "-";
    else
      out += "(" + to_string(c.units[i]) + ")*";
    out += "e" + std::to_string(c.col_to_row[i]);
  }
  return out;
}

std::string injection_text(const ESetInjection& inj) {
  std::string out;
  for (size_t i = 0; i < inj.gens_from; ++i) {
    if (i) out += ", ";
    out += "g" + std::to_string(i) + " -> zeta^" + std::to_string(inj.exponents[i]) +
           " g" + std::to_string(inj.gen_to_gen[i]);
  }
  return out.empty() ? std::string("(nothing to map)") : out;
}

}  // namespace

int main() {
  const FieldDescriptor q = FieldDescriptor::rationals();

  std::printf("== Staircases of inclusions and their pointed-set shadows ==\n\n");

  // A degree-3 staircase: O(0) >-> O(1) >-> O(2) >-> O(3).
  std::vector<CofibCertificate> chain;
  chain.push_back(CofibCertificate{q, 0, 1, {}, {}});
  chain.push_back(CofibCertificate{q, 1, 2, {1}, {-fe_one(q)}});
  chain.push_back(CofibCertificate{q, 2, 3, {0, 2}, {fe_one(q), fe_one(q)}});
  StaircaseObject s(q, std::move(chain));

  std::printf("A degree-%zu staircase with ranks %s:\n", s.degree(),
              rank_list(s).c_str());
  for (size_t i = 0; i < s.degree(); ++i)
    std::printf("  step %zu: O(%zu) >-> O(%zu) via %s\n", i, s.ranks()[i],
                s.ranks()[i + 1], cert_text(s.chain()[i]).c_str());
  std::printf("  composite O(0) >-> O(3): %s\n\n",
              cert_text(s.composite(0, 3)).c_str());

  std::printf("Face operators drop or merge a stage:\n");
  for (size_t i = 0; i <= s.degree(); ++i) {
    StaircaseObject d = face(s, i);
    std::printf("  d_%zu: ranks %s\n", i, rank_list(d).c_str());
  }
  std::printf("Degeneracy operators repeat a stage:\n");
  for (size_t i = 0; i <= s.degree(); ++i) {
    StaircaseObject e = degeneracy(s, i);
    std::printf("  s_%zu: ranks %s\n", i, rank_list(e).c_str());
  }
  std::printf("\n");

  // Spot-check two simplicial identities on this staircase.
  bool face_identity = face(face(s, 3), 1) == face(face(s, 1), 2);
  bool mixed_identity = face(degeneracy(s, 0), 0) == s;
  std::printf("d_1 d_3 = d_2 d_1 on this staircase: %s\n",
              face_identity ? "yes" : "NO");
  std::printf("d_0 s_0 = id on this staircase:      %s\n\n",
              mixed_identity ? "yes" : "NO");
  if (!face_identity || !mixed_identity) return 1;

  std::printf("Each inclusion is equivalently a pointed-set injection that maps\n");
  std::printf("generators to unit multiples of generators:\n");
  for (size_t i = 0; i < s.degree(); ++i) {
    ESetInjection inj = to_pointed_eset(s.chain()[i]);
    std::printf("  step %zu: %zu -> %zu generators, %s\n", i, inj.gens_from,
                inj.gens_to, injection_text(inj).c_str());
  }
  std::printf("\n");

  std::printf("Counting staircases two ways (top rank <= 3):\n");
  std::printf("  %-12s %-8s %-16s %-16s\n", "unit group", "degree", "free modules",
              "pointed sets");
  for (long w : {2, 4})
    for (size_t deg = 0; deg <= 3; ++deg) {
      SObjectCensus census = enumerate_s_objects(w, deg, 3);
      std::printf("  order %-6ld %-8zu %-16s %-16s%s\n", w, deg,
                  census.module_count.get_str().c_str(),
                  census.eset_count.get_str().c_str(),
                  census.module_count == census.eset_count ? "" : "  MISMATCH");
      if (!(census.module_count == census.eset_count)) return 1;
    }

  std::printf(
      "\nThe two counts agree in every row: staircases of free-module\n"
      "inclusions and staircases of pointed-set injections are the same\n"
      "combinatorial objects.\n");
  return 0;
}
