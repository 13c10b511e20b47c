#include "deltalab/census/family.hpp"
#include "deltalab/census/reports.hpp"
#include "deltalab/store/csv.hpp"
#include "deltalab/store/import.hpp"
#include "deltalab/store/store.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace deltalab;
namespace fs = std::filesystem;

namespace {

IntPolynomial P(const char *s) { return IntPolynomial::parse(s); }

fs::path fresh_dir(const std::string &name) {
  fs::path p = fs::temp_directory_path() / ("deltalab_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_same(const CensusRecord &a, const CensusRecord &b) {
  EXPECT_EQ(a.class_id, b.class_id);
  EXPECT_EQ(a.source, b.source);
  EXPECT_EQ(a.field.defining_poly, b.field.defining_poly);
  EXPECT_EQ(a.field.degree, b.field.degree);
  EXPECT_EQ(a.field.r1, b.field.r1);
  EXPECT_EQ(a.field.r2, b.field.r2);
  EXPECT_EQ(a.field.discriminant, b.field.discriminant);
  EXPECT_EQ(a.field.order_basis, b.field.order_basis);
  EXPECT_EQ(a.realizing_poly, b.realizing_poly);
  EXPECT_EQ(a.delta.measure_poly(), b.delta.measure_poly());
  EXPECT_EQ(a.delta.degree(), b.delta.degree());
  EXPECT_EQ(a.delta.value().center().to_exact_string(), b.delta.value().center().to_exact_string());
  EXPECT_EQ(a.delta.value().radius().to_exact_string(), b.delta.value().radius().to_exact_string());
  EXPECT_EQ(a.delta.value().precision(), b.delta.value().precision());
  ASSERT_EQ(a.ratio.has_value(), b.ratio.has_value());
  if (a.ratio) {
    EXPECT_EQ(a.ratio->center().to_exact_string(), b.ratio->center().to_exact_string());
    EXPECT_EQ(a.ratio->radius().to_exact_string(), b.ratio->radius().to_exact_string());
    EXPECT_EQ(a.ratio->precision(), b.ratio->precision());
  }
  EXPECT_EQ(a.flags, b.flags);
  EXPECT_EQ(compare_mahler(a.delta.structure(), b.delta.structure()), Comparison::Equal);
}

CensusRecord family_record() {
  FamilyItem it = family_item(4, 2, 3);
  DeltaResult d;
  d.realizing_poly = it.poly;
  d.height = it.height;
  d.ties = {it.poly};
  FieldEntry e{it.field, {}};
  CensusRecord r = make_record(e, d, {BigRational(1, 12), BigRational(1, 24)});
  r.class_id = "D4:" + it.field.discriminant.get_str() + ":0";
  return r;
}

} // namespace

TEST(Records, RoundTripQi) {
  Census c = build_census(Selection::quadratics(), BigInt(4), {BigRational(1, 6)});
  const CensusRecord *qi = nullptr;
  for (const auto &r : c.records)
    if (r.field.discriminant == -4) qi = &r;
  ASSERT_NE(qi, nullptr);
  expect_same(*qi, record_from_json(json::parse(record_line(*qi))));
  EXPECT_EQ(record_line(record_from_json(json::parse(record_line(*qi)))), record_line(*qi));
}

TEST(Records, RoundTripFamilyRecord) {
  CensusRecord r = family_record();
  EXPECT_FALSE(r.ratio->center().is_zero());
  expect_same(r, record_from_json(json::parse(record_line(r))));
}

TEST(Records, ExactTextForms) {
  CensusRecord r = family_record();
  json j = record_to_json(r);
  EXPECT_TRUE(j["field"]["discriminant"].is_string());
  EXPECT_EQ(j["flags"][0]["gamma"], "1/12");
  EXPECT_TRUE(j["delta"]["value"]["center"].get<std::string>().find("*2^") != std::string::npos);
  EXPECT_EQ(j["delta"]["value"]["bits"].get<long>(), r.delta.value().precision());
  json bad = j;
  bad.erase("field");
  EXPECT_THROW(record_from_json(bad), RecordFormatError);
}

TEST(Store, WriteReadAndIndex) {
  fs::path dir = fresh_dir("rw");
  auto sel = Selection::quartics_over(QuadField::of(P("x^2-2")));
  Census c = build_census(sel, BigInt(2100), {BigRational(1, 12)});
  {
    CensusStore s = CensusStore::open(dir);
    StoreSelection ss{4, sel.name(), sel.policy(), BigInt(2100)};
    std::string log = s.register_selection(ss);
    EXPECT_EQ(write_records(s, log, c.records), c.records.size());
    EXPECT_EQ(write_records(s, log, c.records), 0u); // deduplicated by class
  }
  CensusStore s = CensusStore::open(dir);
  ASSERT_EQ(s.logs().size(), 1u);
  auto back = read_records(s, s.logs()[0]);
  ASSERT_EQ(back.size(), c.records.size());
  for (size_t i = 0; i < back.size(); ++i) expect_same(back[i], c.records[i]);
  // index offsets point at the record lines
  json index = json::parse(slurp(dir / "index.json"));
  std::string text = slurp(dir / s.logs()[0]);
  for (const auto &r : c.records) {
    size_t off = index[s.logs()[0]][r.class_id].get<size_t>();
    EXPECT_EQ(json::parse(text.substr(off, text.find('\n', off) - off))["class_id"], r.class_id);
  }
  fs::remove_all(dir);
}

TEST(Store, VersionMismatchRefused) {
  fs::path dir = fresh_dir("version");
  CensusStore::open(dir);
  json m = json::parse(slurp(dir / "manifest.json"));
  m["version"] = 99;
  std::ofstream(dir / "manifest.json") << m.dump(2) << "\n";
  try {
    CensusStore::open(dir);
    FAIL() << "expected a version refusal";
  } catch (const StoreVersionError &e) {
    EXPECT_NE(std::string(e.what()).find("version 99"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("rebuild"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(Store, TornLineAndResume) {
  auto sel = Selection::quartics_over(QuadField::of(P("x^2-2")));
  StoreSelection ss{4, sel.name(), sel.policy(), BigInt(2100)};
  fs::path full = fresh_dir("full"), part = fresh_dir("part");
  {
    CensusStore s = CensusStore::open(full);
    std::string log = s.register_selection(ss);
    build_census(sel, BigInt(2100), {}, 64, {}, [&](const CensusRecord &r) { s.append(log, r); });
  }
  {
    // interrupted writer: four records, then half a line
    CensusStore s = CensusStore::open(part);
    std::string log = s.register_selection(ss);
    int n = 0;
    try {
      build_census(sel, BigInt(2100), {}, 64, {}, [&](const CensusRecord &r) {
        if (n++ == 4) {
          std::ofstream(part / log, std::ios::app) << record_line(r).substr(0, 50);
          throw std::runtime_error("stop");
        }
        s.append(log, r);
      });
    } catch (const std::runtime_error &) {
    }
  }
  {
    CensusStore s = CensusStore::open(part);
    std::string log = s.register_selection(ss);
    auto existing = read_records(s, log);
    EXPECT_EQ(existing.size(), 4u);
    build_census(sel, BigInt(2100), {}, 64, existing, [&](const CensusRecord &r) { s.append(log, r); });
  }
  for (const char *f : {"manifest.json", "index.json"}) EXPECT_EQ(slurp(full / f), slurp(part / f)) << f;
  std::string log = ss.log_name();
  EXPECT_EQ(slurp(full / log), slurp(part / log));
  fs::remove_all(full);
  fs::remove_all(part);
}

TEST(Csv, HeaderAndHash) {
  CsvReport a;
  a.title = "t";
  a.config = {{"k", "v"}};
  a.columns = {"x", "y"};
  a.rows = {{"1", "a,b"}};
  std::ostringstream out;
  a.write(out);
  std::string s = out.str();
  EXPECT_NE(s.find("# config.k: v"), std::string::npos);
  EXPECT_NE(s.find("# input_sha1: "), std::string::npos);
  EXPECT_NE(s.find("1,\"a,b\""), std::string::npos);
  // git hash-object of "k=v\n"
  EXPECT_EQ(a.input_hash(), git_blob_sha1("k=v\n"));
  EXPECT_EQ(git_blob_sha1(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(git_blob_sha1("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
  EXPECT_EQ(csv_split("a,\"b,\"\"c\"\"\",d"), (std::vector<std::string>{"a", "b,\"c\"", "d"}));
}

TEST(Import, Reconciliation) {
  std::istringstream in("degree,coeffs,discriminant\n"
                        "2,-2;0;1,8\n"
                        "2,-2;0;1,4\n"
                        "4,1;0;0;0;1,256\n"
                        "2,1;x;1,-4\n"
                        "3,-2;0;1,8\n"
                        "2,-1;0;1,4\n"
                        "2,1;0;1\n");
  auto rows = import_table(in);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0].status, ImportStatus::Match);
  EXPECT_EQ(rows[1].status, ImportStatus::Mismatch);
  EXPECT_EQ(rows[1].computed, "8");
  EXPECT_EQ(rows[1].claimed, "4");
  EXPECT_EQ(rows[2].status, ImportStatus::Match);
  EXPECT_EQ(rows[3].status, ImportStatus::Malformed);
  EXPECT_EQ(rows[4].status, ImportStatus::Malformed); // degree does not match
  EXPECT_EQ(rows[5].status, ImportStatus::Malformed); // reducible
  EXPECT_EQ(rows[6].status, ImportStatus::Malformed);
  EXPECT_EQ(rows[3].line, 5u);
}
