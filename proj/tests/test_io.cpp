#include <cstdint>
#include <cstdio>
#include <string>

#include <doctest.h>

#include "fisherkit/errors.hpp"
#include "fisherkit/graham_pollak.hpp"
#include "fisherkit/io.hpp"
#include "fisherkit/set_family.hpp"

using namespace fisher;

namespace {

bool same_family(const SetFamily& a, const SetFamily& b) {
  if (a.n() != b.n() || a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a.set(i) != b.set(i)) return false;
  return true;
}

bool same_partition(const BicliquePartition& a, const BicliquePartition& b) {
  if (a.n != b.n || a.parts.size() != b.parts.size()) return false;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    if (a.parts[i].left != b.parts[i].left || a.parts[i].right != b.parts[i].right) return false;
  return true;
}

}  // namespace

TEST_CASE("family serialization round trips") {
  const SetFamily tiny(2, {{1}, {1, 2}});
  CHECK(serialize_family(tiny) == "n=2\n1\n1 2\n");

  for (const SetFamily& f : {gen_projective_plane(2), gen_sunflower(6, 2, 4, true),
                             gen_random_family(5, 4, 99), SetFamily(4, {})}) {
    CHECK(same_family(parse_family_text(serialize_family(f)), f));
    CHECK(same_family(parse_family_json(serialize_family_json(f)), f));
    // The sniffing entry point picks the right parser for both forms.
    CHECK(same_family(parse_family(serialize_family(f)), f));
    CHECK(same_family(parse_family(serialize_family_json(f)), f));
  }

  CHECK(same_family(parse_family("  \n\t {\"n\": 2, \"sets\": [[1, 2]]}"), SetFamily(2, {{1, 2}})));
  CHECK(same_family(parse_family_text("n=2\r\n\r\n1 2\r\n"), SetFamily(2, {{1, 2}})));
}

TEST_CASE("malformed family input is rejected") {
  CHECK_THROWS_AS(parse_family_text(""), InputError);
  CHECK_THROWS_AS(parse_family_text("   \n  \n"), InputError);
  CHECK_THROWS_AS(parse_family_text("1 2\n"), InputError);       // missing header
  CHECK_THROWS_AS(parse_family_text("n=x\n"), InputError);       // bad header value
  CHECK_THROWS_AS(parse_family_text("n=2\n1 y\n"), InputError);  // bad element token
  CHECK_THROWS_AS(parse_family_text("n=2\n1 2x\n"), InputError);
  CHECK_THROWS_AS(parse_family_text("n=2\n3\n"), InputError);  // element out of range

  CHECK_THROWS_AS(parse_family_json("{"), InputError);
  CHECK_THROWS_AS(parse_family_json("[1, 2]"), InputError);
  CHECK_THROWS_AS(parse_family_json("{\"n\": 2}"), InputError);
  CHECK_THROWS_AS(parse_family_json("{\"n\": \"2\", \"sets\": []}"), InputError);
  CHECK_THROWS_AS(parse_family_json("{\"n\": 2, \"sets\": 7}"), InputError);
  CHECK_THROWS_AS(parse_family_json("{\"n\": 2, \"sets\": [[1.5]]}"), InputError);
  CHECK_THROWS_AS(parse_family_json("{\"n\": 2, \"sets\": [7]}"), InputError);
}

TEST_CASE("matrix serialization round trips") {
  IntMatrix X(2, 3);
  X << -3, 0, 123456789012345LL, 7, -987654321LL, 1;
  CHECK(serialize_matrix(X) == "m=2 n=3\n-3 0 123456789012345\n7 -987654321 1\n");
  CHECK(parse_matrix(serialize_matrix(X)) == X);

  const IntMatrix empty(0, 3);
  CHECK(serialize_matrix(empty) == "m=0 n=3\n");
  const IntMatrix back = parse_matrix("m=0 n=3\n");
  CHECK(back.rows() == 0);
  CHECK(back.cols() == 3);
}

TEST_CASE("malformed matrix input is rejected") {
  CHECK_THROWS_AS(parse_matrix(""), InputError);
  CHECK_THROWS_AS(parse_matrix("m=2\n"), InputError);           // header missing n
  CHECK_THROWS_AS(parse_matrix("n=2 m=2\n"), InputError);       // keys swapped
  CHECK_THROWS_AS(parse_matrix("m=-1 n=2\n"), InputError);      // negative dimension
  CHECK_THROWS_AS(parse_matrix("m=2 n=2\n1 0\n"), InputError);  // missing row
  CHECK_THROWS_AS(parse_matrix("m=1 n=2\n1 0\n0 1\n"), InputError);
  CHECK_THROWS_AS(parse_matrix("m=1 n=2\n1 0 1\n"), InputError);  // row too long
  CHECK_THROWS_AS(parse_matrix("m=1 n=2\n1 q\n"), InputError);
}

TEST_CASE("partition serialization round trips") {
  const BicliquePartition tri = star_partition(3);
  CHECK(serialize_partition(tri) == "n=3\n1 | 2 3\n2 | 3\n");

  for (int n : {2, 5, 9}) {
    const BicliquePartition p = star_partition(n);
    CHECK(same_partition(parse_partition_text(serialize_partition(p)), p));
    CHECK(same_partition(parse_partition_json(serialize_partition_json(p)), p));
    CHECK(same_partition(parse_partition(serialize_partition(p)), p));
    CHECK(same_partition(parse_partition(serialize_partition_json(p)), p));
  }
}

TEST_CASE("malformed partition input is rejected") {
  CHECK_THROWS_AS(parse_partition_text(""), InputError);
  CHECK_THROWS_AS(parse_partition_text("n=3\n1 2 3\n"), InputError);  // no '|'
  CHECK_THROWS_AS(parse_partition_text("n=3\n2 1 | 3\n"), InputError);  // unsorted side
  CHECK_THROWS_AS(parse_partition_text("n=3\n1 | 4\n"), InputError);
  CHECK_THROWS_AS(parse_partition_text("n=3\n | 2\n"), InputError);  // empty side
  CHECK_THROWS_AS(parse_partition_json("{\"n\": 3}"), InputError);
  CHECK_THROWS_AS(parse_partition_json("{\"n\": 3, \"parts\": [{\"left\": [1]}]}"), InputError);
}

TEST_CASE("matrix sniffing") {
  CHECK(looks_like_matrix("m=2 n=2\n1 0\n0 1\n"));
  CHECK(looks_like_matrix("  \n\tm=1 n=1\n1\n"));
  CHECK_FALSE(looks_like_matrix("n=2\n1 2\n"));
  CHECK_FALSE(looks_like_matrix(""));
  CHECK_FALSE(looks_like_matrix("   \n"));
  CHECK_FALSE(looks_like_matrix("{\"n\": 2, \"sets\": []}"));
}

TEST_CASE("content digests") {
  // Reference values of 64-bit FNV-1a on canonical inputs.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(hex_digest(0) == "0000000000000000");
  CHECK(hex_digest(0xcbf29ce484222325ull) == "cbf29ce484222325");

  const SetFamily fano = gen_projective_plane(2);
  const std::string digest = family_digest(fano);
  CHECK(digest.size() == 16);
  for (char c : digest) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
  CHECK(digest == family_digest(gen_projective_plane(2)));
  CHECK(digest != family_digest(gen_near_pencil(7)));
  CHECK(digest == hex_digest(fnv1a64(serialize_family(fano))));

  IntMatrix X(1, 2);
  X << 3, -4;
  CHECK(matrix_digest(X) == hex_digest(fnv1a64(serialize_matrix(X))));
}

TEST_CASE("whole-file helpers") {
  const std::string path = "io_test_scratch.txt";
  const std::string content = "n=2\n1 2\n\nline with spaces  \n";
  write_file(path, content);
  CHECK(read_file(path) == content);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_file("no_such_directory_xyz/missing.txt"), InputError);
  CHECK_THROWS_AS(write_file("no_such_directory_xyz/out.txt", "x"), InputError);
}
