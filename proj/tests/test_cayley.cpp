#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <vector>

#include "tableiso/cayley.hpp"
#include "tableiso/corpus.hpp"
#include "tableiso/errors.hpp"

#include "oracle.hpp"

using namespace tableiso;

namespace {

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return errc::syntax_error;
}

std::vector<std::vector<int>> rows_of(const CayleyTable& g) {
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(g.n),
                                    std::vector<int>(static_cast<std::size_t>(g.n)));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) raw[a][b] = g.mul(a, b);
  return raw;
}

// Chein's doubled loop over S3: identity and two-sided inverses but not
// associative, since S3 is nonabelian.
std::vector<std::vector<int>> chein_loop_rows() {
  CayleyTable s3 = make_group("symmetric 3");
  int m = s3.n;
  auto enc = [&](int x, int u) { return u * m + x; };
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(2 * m),
                                    std::vector<int>(static_cast<std::size_t>(2 * m)));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      raw[enc(x, 0)][enc(y, 0)] = enc(s3.mul(x, y), 0);
      raw[enc(x, 0)][enc(y, 1)] = enc(s3.mul(y, x), 1);
      raw[enc(x, 1)][enc(y, 0)] = enc(s3.mul(x, s3.inv(y)), 1);
      raw[enc(x, 1)][enc(y, 1)] = enc(s3.mul(s3.inv(y), x), 0);
    }
  return raw;
}

}  // namespace

TEST_CASE("validate_cayley_table accepts groups and locates the identity") {
  CayleyTable z3 = validate_cayley_table(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(z3.identity == 0);
  CHECK(z3.inv(1) == 2);

  // identity not at index 0
  CayleyTable swapped = validate_cayley_table(2, {{1, 0}, {0, 1}});
  CHECK(swapped.identity == 1);
  CHECK(swapped.inv(0) == 0);
}

TEST_CASE("validate_cayley_table rejects malformed tables with specific codes") {
  CHECK(code_of([] { validate_cayley_table(0, {}); }) == errc::invalid_order);
  CHECK(code_of([] { validate_cayley_table(2, {{0, 1}}); }) == errc::entry_out_of_range);
  CHECK(code_of([] { validate_cayley_table(2, {{0, 5}, {1, 0}}); }) == errc::entry_out_of_range);
  CHECK(code_of([] { validate_cayley_table(2, {{0, 0}, {0, 0}}); }) == errc::no_identity);
  CHECK(code_of([] { validate_cayley_table(2, {{0, 1}, {1, 1}}); }) == errc::missing_inverse);
  CHECK(code_of([] { validate_cayley_table(12, chein_loop_rows()); }) == errc::not_associative);
}

TEST_CASE("element sets order by member lists and support the set algebra") {
  ElementSet a = ElementSet::single(70, 3);
  ElementSet b = ElementSet::single(70, 65);
  CHECK(a < b);
  ElementSet u = set_union(a, b);
  CHECK(u.size() == 2);
  CHECK(u.contains(3));
  CHECK(u.contains(65));
  CHECK(a.is_subset_of(u));
  CHECK(intersection_size(u, b) == 1);
  CHECK(intersection_size(a, b) == 0);
  CHECK(ElementSet::full(70).size() == 70);

  // {1,2} before {1,3} before {2}
  ElementSet s12(5), s13(5), s2(5);
  s12.insert(1);
  s12.insert(2);
  s13.insert(1);
  s13.insert(3);
  s2.insert(2);
  CHECK(s12 < s13);
  CHECK(s13 < s2);
}

TEST_CASE("closure and element orders") {
  CayleyTable s3 = make_group("symmetric 3");
  // lex-ranked permutations of 0..2: index 3 and 4 are the 3-cycles
  CHECK(element_order(s3, 0) == 1);
  CHECK(element_order(s3, 3) == 3);
  CHECK(element_order(s3, 1) == 2);

  ElementSet two(6);
  two.insert(1);
  two.insert(2);
  CHECK(closure(s3, two).size() == 6);
  CHECK(closure(s3, ElementSet::single(6, 3)).size() == 3);

  GeneratorSequence redundant{{3, 4}};
  CHECK_FALSE(is_irredundant_chain(s3, redundant));
  GeneratorSequence fine{{1, 3}};
  CHECK(is_irredundant_chain(s3, fine));
}

TEST_CASE("smallest_prime_divisor") {
  CHECK(smallest_prime_divisor(12) == 2);
  CHECK(smallest_prime_divisor(15) == 3);
  CHECK(smallest_prime_divisor(49) == 7);
  CHECK(smallest_prime_divisor(13) == 13);
  CHECK(code_of([] { smallest_prime_divisor(1); }) == errc::invalid_order);
}

TEST_CASE("has_generating_sequence_of_size matches minimal generator counts") {
  CayleyTable z8 = make_group("cyclic 8");
  auto one = has_generating_sequence_of_size(z8, 1);
  REQUIRE(one.has_value());
  CHECK(closure_of_sequence(z8, *one).size() == 8);

  CayleyTable v4 = make_group("elementary 2 2");
  CHECK_FALSE(has_generating_sequence_of_size(v4, 1).has_value());
  CHECK(has_generating_sequence_of_size(v4, 2).has_value());

  CayleyTable e8 = make_group("elementary 2 3");
  CHECK_FALSE(has_generating_sequence_of_size(e8, 2).has_value());
  CHECK(has_generating_sequence_of_size(e8, 3).has_value());
}

TEST_CASE("normal closures, normality, quotients") {
  CayleyTable s3 = make_group("symmetric 3");
  ElementSet a3 = normal_closure(s3, 3);
  CHECK(a3.size() == 3);
  CHECK(is_normal(s3, a3));
  ElementSet whole = normal_closure(s3, 1);
  CHECK(whole.size() == 6);

  ElementSet flip = closure(s3, ElementSet::single(6, 1));
  CHECK(flip.size() == 2);
  CHECK_FALSE(is_normal(s3, flip));

  QuotientResult q = quotient(s3, a3);
  CHECK(q.quotient.n == 2);
  CHECK(q.projection[0] == 0);
  CHECK(q.projection[1] == 1);

  ElementSet not_closed(6);
  not_closed.insert(0);
  not_closed.insert(3);
  not_closed.insert(1);
  CHECK(code_of([&] { quotient(s3, not_closed); }) == errc::not_a_subgroup);
  CHECK(code_of([&] { quotient(s3, flip); }) == errc::not_normal);
}

TEST_CASE("quotient numbers cosets by least member") {
  CayleyTable z4 = make_group("cyclic 4");
  ElementSet half(4);
  half.insert(0);
  half.insert(2);
  QuotientResult q = quotient(z4, half);
  CHECK(q.projection == std::vector<int>{0, 1, 0, 1});
  CHECK(q.cosets[0].contains(0));
  CHECK(q.cosets[1].contains(3));
}

TEST_CASE("subgroup_table embeds an honest copy") {
  CayleyTable s3 = make_group("symmetric 3");
  ElementSet a3 = normal_closure(s3, 3);
  SubgroupTable st = subgroup_table(s3, a3);
  REQUIRE(st.group.n == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(st.embedding[st.group.mul(i, j)] == s3.mul(st.embedding[i], st.embedding[j]));
  CHECK(oracle::groups_isomorphic(st.group, make_group("cyclic 3")));
}

TEST_CASE("round-trip through raw rows revalidates") {
  CayleyTable g = make_group("dihedral 4");
  CayleyTable again = validate_cayley_table(g.n, rows_of(g));
  CHECK(again.table == g.table);
  CHECK(again.identity == g.identity);
}
