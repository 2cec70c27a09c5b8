#pragma once

#include <random>
#include <string>
#include <vector>

#include "enconv/unl.hpp"

namespace enconv::testing {

// Random well-formed UNL expressions over the built-in relation labels.
class UnlGenerator {
 public:
  explicit UnlGenerator(unsigned seed) : rng_(seed) {}

  unl::UnlExpression expression() {
    unl::UnlExpression e;
    int scopes = pick(0, 2);
    for (int id = 1; id <= scopes; ++id) {
      int n = pick(1, 3);
      for (int i = 0; i < n; ++i) e.scopes[id].push_back(relation(0));
    }
    int n = pick(0, 6);
    for (int i = 0; i < n; ++i) e.relations.push_back(relation(scopes));
    return e;
  }

  unl::UniversalWord universal_word() {
    unl::UniversalWord uw;
    uw.head = word();
    if (pick(0, 3) == 0) uw.head += " " + word();
    int n = pick(0, 3);
    for (int i = 0; i < n; ++i) {
      unl::Restriction r;
      r.tag = one_of(kTags);
      if (pick(0, 4) != 0) {
        r.target = word();
        for (int depth = pick(0, 2); depth > 0; --depth) r.target += ">" + word();
        if (pick(0, 5) == 0) r.target += " " + word();
      }
      uw.restrictions.push_back(r);
    }
    return uw;
  }

 private:
  unl::Relation relation(int scopes) {
    unl::Relation rel;
    rel.label = one_of(kLabels);
    rel.head = endpoint(scopes);
    do {
      rel.dependent = endpoint(scopes);
    } while (rel.dependent == rel.head);
    return rel;
  }

  unl::Endpoint endpoint(int scopes) {
    if (scopes > 0 && pick(0, 5) == 0) return unl::ScopeRef{pick(1, scopes)};
    unl::UwInstance inst;
    inst.uw = universal_word();
    std::vector<std::string> pool = kAttributes;
    std::shuffle(pool.begin(), pool.end(), rng_);
    pool.resize(static_cast<std::size_t>(pick(0, 3)));
    inst.attributes = pool;
    if (pick(0, 2) == 0) inst.instance_id = pick(1, 99);
    return inst;
  }

  std::string word() {
    static const std::string letters = "abcdefghijklmnopqrstuvwxyz_-";
    if (pick(0, 9) == 0) return one_of(kBangla);
    std::string w(1, letters[static_cast<std::size_t>(pick(0, 25))]);
    for (int i = pick(0, 7); i > 0; --i) w += letters[static_cast<std::size_t>(pick(0, 27))];
    return w;
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  const std::string& one_of(const std::vector<std::string>& v) {
    return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
  }

  inline static const std::vector<std::string> kLabels = {"agt", "obj", "plc", "plt", "plf", "pur",
                                                          "met", "man", "tim", "pos", "ben"};
  inline static const std::vector<std::string> kTags = {"icl", "iof", "equ", "agt", "obj", "plt"};
  inline static const std::vector<std::string> kAttributes = {
      "@present", "@past", "@progress", "@pl", "@interrogative", "@pred", "@indef", "@future"};
  inline static const std::vector<std::string> kBangla = {"মাছ", "গরম", "ঢাকা"};

  std::mt19937 rng_;
};

}  // namespace enconv::testing
