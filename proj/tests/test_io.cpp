#include "qbox/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace qbox;

TEST_CASE("numbers are formatted with 17 significant digits, deterministically") {
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(0.1) == "0.10000000000000001");
  // Round-trip: 17 significant digits reproduce the exact double.
  const double v = 0.2882532492202050;
  CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(v) == format_number(v));
}

TEST_CASE("csv output is byte-stable with comma separators and newline rows") {
  std::ostringstream ss;
  write_csv(ss, {"a", "b"}, {{1.0, 0.5}, {-3.0, 0.25}});
  CHECK(ss.str() == "a,b\n1,0.5\n-3,0.25\n");
}

TEST_CASE("json writer emits valid nested structures") {
  std::ostringstream ss;
  JsonWriter jw(ss);
  jw.begin_object();
  jw.key("name").value("run \"x\"\n");
  jw.key("count").value(3);
  jw.key("ok").value(true);
  jw.key("vals").begin_array().value(1.5).value(-2.0).end_array();
  jw.key("nested").begin_object().key("z").value(0.0).end_object();
  jw.end_object();
  CHECK(ss.str() ==
        "{\"name\":\"run \\\"x\\\"\\n\",\"count\":3,\"ok\":true,"
        "\"vals\":[1.5,-2],\"nested\":{\"z\":0}}");
}

TEST_CASE("svg charts contain one polyline per series and a frame per panel") {
  SvgSeries s1{"first", {0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}};
  SvgSeries s2{"second", {0.0, 0.5, 1.0}, {1.0, 0.0, 1.0}};
  SvgPanel p1{"top", {s1, s2}};
  SvgPanel p2{"bottom", {s1}};
  std::ostringstream ss;
  write_svg(ss, {p1, p2});
  const std::string svg = ss.str();

  const auto count = [&](const std::string& needle) {
    std::size_t c = 0, pos = 0;
    while ((pos = svg.find(needle, pos)) != std::string::npos) {
      ++c;
      pos += needle.size();
    }
    return c;
  };
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count("<polyline") == 3);
  CHECK(count("top") >= 1);
  CHECK(count("bottom") >= 1);
  CHECK(svg.find("</svg>") != std::string::npos);

  // Deterministic output.
  std::ostringstream ss2;
  write_svg(ss2, {p1, p2});
  CHECK(svg == ss2.str());
}
