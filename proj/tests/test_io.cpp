#include <doctest.h>

#include <sstream>

#include "mallows/errors.hpp"
#include "mallows/io.hpp"

using namespace mallows;

TEST_CASE("csv splitting") {
  CHECK(split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_csv_line("\"sea, eel\",2") == std::vector<std::string>{"sea, eel", "2"});
  CHECK(split_csv_line("\"say \"\"hi\"\"\",x") == std::vector<std::string>{"say \"hi\"", "x"});
  CHECK(trim("  x \r") == "x");
}

TEST_CASE("rankings csv") {
  const auto d = parse_rankings_csv("item_1,item_2,item_3\n1,2,3\n3,1,2\n");
  CHECK(d.items == std::vector<std::string>{"item_1", "item_2", "item_3"});
  CHECK(d.sample.size() == 2);
  CHECK(d.sample[1] == Ranking{3, 1, 2});
  CHECK(parse_rankings_csv("a,b\n").sample.empty());
}

TEST_CASE("malformed rows are rejected with their line number") {
  auto message = [](const std::string& text) {
    try {
      parse_rankings_csv(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("a,b,c\n1,2,3\n1,1,3\n").find("line 3") != std::string::npos);
  CHECK(message("a,b,c\n1,2,4\n").find("line 2") != std::string::npos);
  CHECK(message("a,b,c\n1,2\n").find("line 2") != std::string::npos);
  CHECK(message("a,b,c\n1,x,3\n").find("line 2") != std::string::npos);
  CHECK_FALSE(message("").empty());
}

TEST_CASE("write and read back") {
  RankingSample s(std::vector<Ranking>{{2, 1, 3}, {1, 3, 2}});
  std::ostringstream os;
  write_rankings_csv(os, s);
  CHECK(os.str() == "item_1,item_2,item_3\n2,1,3\n1,3,2\n");
  CHECK(parse_rankings_csv(os.str()).sample.rows() == s.rows());
}

TEST_CASE("digest") {
  CHECK(digest_hex("") == "cbf29ce484222325");
  CHECK(digest_hex("a") == "af63dc4c8601ec8c");
  CHECK(digest_hex("a") != digest_hex("b"));
}
