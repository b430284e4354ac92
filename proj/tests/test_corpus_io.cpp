#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "oracle.hpp"
#include "tableiso/cayley.hpp"
#include "tableiso/corpus.hpp"
#include "tableiso/errors.hpp"
#include "tableiso/table_io.hpp"

using namespace tableiso;

namespace {

errc group_spec_error(const std::string& spec) {
  try {
    make_group(spec);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a tableiso::Error for spec: " << spec);
  return errc::syntax_error;
}

errc ring_spec_error(const std::string& spec) {
  try {
    make_ring(spec);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a tableiso::Error for spec: " << spec);
  return errc::syntax_error;
}

errc parse_error(const std::string& text, int max_order, std::string* message = nullptr) {
  try {
    parse_table_text(text, max_order);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("expected a tableiso::Error");
  return errc::syntax_error;
}

int center_size(const CayleyTable& g) {
  int count = 0;
  for (int x = 0; x < g.n; ++x) {
    bool central = true;
    for (int y = 0; y < g.n; ++y)
      if (g.mul(x, y) != g.mul(y, x)) central = false;
    if (central) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("group constructors produce the advertised orders") {
  CHECK(make_group("cyclic 12").n == 12);
  CHECK(make_group("elementary 3 2").n == 9);
  CHECK(make_group("dihedral 6").n == 12);
  CHECK(make_group("quaternion 16").n == 16);
  CHECK(make_group("symmetric 4").n == 24);
  CHECK(make_group("heisenberg 3").n == 27);
  CHECK(make_group("semidirect 7 3 2").n == 21);
  CHECK(make_group("product cyclic 2 cyclic 3").n == 6);
  for (int i = 1; i <= 14; ++i) CHECK(make_group("small16 " + std::to_string(i)).n == 16);
}

TEST_CASE("constructed groups have the right structure") {
  CayleyTable q8 = make_group("quaternion 8");
  int order2 = 0, order4 = 0;
  for (int x = 1; x < q8.n; ++x) {
    int o = element_order(q8, x);
    if (o == 2) ++order2;
    if (o == 4) ++order4;
  }
  CHECK(order2 == 1);
  CHECK(order4 == 6);

  CayleyTable s3 = make_group("symmetric 3");
  CHECK(s3.identity == 0);
  CHECK(element_order(s3, 1) == 2);
  CHECK(element_order(s3, 3) == 3);
  CHECK(oracle::groups_isomorphic(s3, make_group("dihedral 3")));
  CHECK(oracle::groups_isomorphic(s3, make_group("semidirect 3 2 2")));
  CHECK_FALSE(oracle::groups_isomorphic(s3, make_group("cyclic 6")));

  CHECK(oracle::groups_isomorphic(make_group("product cyclic 2 cyclic 3"), make_group("cyclic 6")));
  CHECK(oracle::groups_isomorphic(make_group("heisenberg 2"), make_group("dihedral 4")));

  // the two hand-rolled order-16 tables: same center size, different exponent
  CayleyTable g3 = make_group("small16 3");
  CayleyTable g13 = make_group("small16 13");
  CHECK(center_size(g3) == 4);
  CHECK(center_size(g13) == 4);
  auto max_central_order = [](const CayleyTable& g) {
    int best = 1;
    for (int x = 0; x < g.n; ++x) {
      bool central = true;
      for (int y = 0; y < g.n; ++y)
        if (g.mul(x, y) != g.mul(y, x)) central = false;
      if (central) best = std::max(best, element_order(g, x));
    }
    return best;
  };
  CHECK(max_central_order(g3) == 2);
  CHECK(max_central_order(g13) == 4);
  CHECK_FALSE(oracle::groups_isomorphic(g3, g13));

  CHECK(oracle::groups_isomorphic(make_group("small16 7"), make_group("dihedral 8")));
  CHECK_FALSE(oracle::groups_isomorphic(make_group("small16 5"), make_group("small16 6")));
  CHECK_FALSE(oracle::groups_isomorphic(make_group("small16 11"), make_group("small16 12")));
}

TEST_CASE("group spec rejections") {
  CHECK(group_spec_error("cyclic 0") == errc::invalid_order);
  CHECK(group_spec_error("elementary 4 2") == errc::invalid_order);
  CHECK(group_spec_error("elementary 2 0") == errc::invalid_order);
  CHECK(group_spec_error("quaternion 12") == errc::invalid_order);
  CHECK(group_spec_error("quaternion 4") == errc::invalid_order);
  CHECK(group_spec_error("symmetric 6") == errc::invalid_order);
  CHECK(group_spec_error("semidirect 4 2 2") == errc::invalid_order);   // gcd(r, m) != 1
  CHECK(group_spec_error("semidirect 5 3 2") == errc::invalid_order);   // r^k != 1 mod m
  CHECK(group_spec_error("small16 15") == errc::syntax_error);
  CHECK(group_spec_error("small16 0") == errc::syntax_error);
  CHECK(group_spec_error("frobnitz 3") == errc::unknown_spec);
  CHECK(group_spec_error("cyclic") == errc::syntax_error);
  CHECK(group_spec_error("product cyclic 2") == errc::syntax_error);
  CHECK(group_spec_error("cyclic 4 7") == errc::syntax_error);
  CHECK(group_spec_error("cyclic -3") == errc::syntax_error);
  CHECK(group_spec_error("cyclic x") == errc::syntax_error);
  CHECK(group_spec_error("elementary 2 9") == errc::too_large);
  CHECK(group_spec_error("cyclic 300") == errc::too_large);

  CHECK(make_group("cyclic 20", 20).n == 20);
  try {
    make_group("cyclic 20", 10);
    FAIL("expected too_large");
  } catch (const Error& e) {
    CHECK(e.code() == errc::too_large);
  }
}

TEST_CASE("ring specs and rejections") {
  CHECK(make_ring("zmod 8").n == 8);
  CHECK(make_ring("gf 8").n == 8);
  CHECK(make_ring("dual 5").n == 25);
  CHECK(make_ring("evens 10").n == 5);
  CHECK(make_ring("product zmod 2 zmod 2").n == 4);

  CHECK(ring_spec_error("zmod 0") == errc::invalid_order);
  CHECK(ring_spec_error("gf 16") == errc::invalid_order);
  CHECK(ring_spec_error("dual 4") == errc::invalid_order);
  CHECK(ring_spec_error("evens 7") == errc::invalid_order);
  CHECK(ring_spec_error("cyclic 4") == errc::unknown_spec);
  CHECK(ring_spec_error("zmod 4 zmod") == errc::syntax_error);
  CHECK(ring_spec_error("zmod 500") == errc::too_large);
}

TEST_CASE("spec kind detection") {
  CHECK(is_ring_spec("zmod 4"));
  CHECK(is_ring_spec("gf 9"));
  CHECK(is_ring_spec("dual 2"));
  CHECK(is_ring_spec("evens 8"));
  CHECK(is_ring_spec("product zmod 2 zmod 3"));
  CHECK(is_ring_spec("product product zmod 2 zmod 2 gf 4"));
  CHECK_FALSE(is_ring_spec("cyclic 4"));
  CHECK_FALSE(is_ring_spec("product cyclic 2 cyclic 2"));
  CHECK_FALSE(is_ring_spec(""));
}

TEST_CASE("relabeled copies are isomorphic and validated") {
  CayleyTable d4 = make_group("dihedral 4");
  CayleyTable copy = relabeled_copy(d4, 9);
  CHECK(copy.n == d4.n);
  CHECK(oracle::groups_isomorphic(d4, copy));
  CHECK(relabeled_copy(d4, 9).table == copy.table);  // seed determinism
}

TEST_CASE("table text round trips") {
  CayleyTable g = make_group("small16 7");
  AnyTable parsed = parse_table_text(serialize_group(g));
  REQUIRE(std::holds_alternative<CayleyTable>(parsed));
  CHECK(std::get<CayleyTable>(parsed).table == g.table);
  CHECK(std::get<CayleyTable>(parsed).identity == g.identity);

  RingTable r = make_ring("gf 8");
  AnyTable rparsed = parse_table_text(serialize_ring(r));
  REQUIRE(std::holds_alternative<RingTable>(rparsed));
  CHECK(std::get<RingTable>(rparsed).add.table == r.add.table);
  CHECK(std::get<RingTable>(rparsed).mul_table == r.mul_table);
}

TEST_CASE("table text accepts comments and free-form whitespace") {
  AnyTable t = parse_table_text("# the two-element group\n  group\t2 # order\n0 1 # first row\n1 0\n");
  REQUIRE(std::holds_alternative<CayleyTable>(t));
  CHECK(std::get<CayleyTable>(t).n == 2);

  AnyTable r = parse_table_text("ring 2\n0 1\n1 0\n\n0 0\n0 0\n");
  REQUIRE(std::holds_alternative<RingTable>(r));
  CHECK(std::get<RingTable>(r).mul(1, 1) == 0);
}

TEST_CASE("table text errors carry codes and line numbers") {
  CHECK(parse_error("grp 2\n0 1\n1 0\n", 256) == errc::syntax_error);
  CHECK(parse_error("group x\n", 256) == errc::syntax_error);
  CHECK(parse_error("group 0\n", 256) == errc::invalid_order);
  CHECK(parse_error("group 500\n", 256) == errc::too_large);
  CHECK(parse_error("group 3\n0 1 2\n1 2 0\n2 0 1\n", 2) == errc::too_large);
  CHECK(parse_error("group 2\n0 1\n1 1\n", 256) == errc::missing_inverse);
  CHECK(parse_error("ring 2\n0 0\n0 0\n0 0\n0 0\n", 256) == errc::add_not_abelian_group);
  CHECK(parse_error("group 2\n0 1\n1\n", 256) == errc::syntax_error);  // runs out of entries

  std::string msg;
  CHECK(parse_error("group 2\n0 1\n1 x\n", 256, &msg) == errc::syntax_error);
  CHECK(msg.find("line 3") != std::string::npos);

  msg.clear();
  CHECK(parse_error("group 2\n0 1\n1 0\nextra\n", 256, &msg) == errc::syntax_error);
  CHECK(msg.find("line 4") != std::string::npos);
  CHECK(msg.find("extra") != std::string::npos);
}

TEST_CASE("table files write and read back") {
  std::string path = "tableiso_io_roundtrip.txt";
  CayleyTable g = make_group("heisenberg 3");
  write_table_file(path, AnyTable{g});
  AnyTable back = read_table_file(path);
  REQUIRE(std::holds_alternative<CayleyTable>(back));
  CHECK(std::get<CayleyTable>(back).table == g.table);
  std::remove(path.c_str());

  try {
    read_table_file("definitely_missing_file.txt");
    FAIL("expected syntax_error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::syntax_error);
  }
}
