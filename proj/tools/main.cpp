// Command-line front end for the framed-link census tools.
//
// Subcommands: parse, invariants, group, covers, fingerprint, compare,
// classify.  Every command reads a census-format link file, selects
// records through the built-in manifest (overridable with --manifest), and
// prints either canonical JSON (default) or human-readable text.  JSON
// output is byte-deterministic for fixed inputs and flags.
//
// Exit codes: 0 success, 2 parse failure, 3 manifest mismatch, 4 geometric
// mismatch, 5 budget exhausted, 1 any other error.  Failures print a
// machine-parseable error object on stderr.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfl/bfl.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parse = 2;
constexpr int exit_manifest = 3;
constexpr int exit_geometry = 4;
constexpr int exit_budget = 5;
constexpr int exit_other = 1;

std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw bfl::parse_error(bfl::errc::unexpected_end_of_input,
                           "cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code_for(const bfl::error& e) {
  switch (e.code()) {
    case bfl::errc::manifest_mismatch:
      return exit_manifest;
    case bfl::errc::degenerate_intersection:
    case bfl::errc::geometric_mismatch:
      return exit_geometry;
    case bfl::errc::budget_exceeded:
      return exit_budget;
    default:
      return exit_other;  // reader failures arrive as parse_error instead
  }
}

void print_error_object(int exit_code, const std::string& code,
                        const std::string& message, const ordered_json& extra) {
  ordered_json err;
  err["exit"] = exit_code;
  err["code"] = code;
  err["message"] = message;
  for (const auto& [k, v] : extra.items()) err[k] = v;
  ordered_json wrapper;
  wrapper["error"] = err;
  std::cerr << wrapper.dump(2) << "\n";
}

// Options shared by the record-oriented commands.
struct common_options {
  std::string file;
  std::string manifest_path;
  std::string chirality_name = "default";
  bool text = false;

  bfl::chirality handedness() const {
    return chirality_name == "mirror" ? bfl::chirality::first_over
                                      : bfl::chirality::first_under;
  }
  std::vector<bfl::manifest_entry> manifest() const {
    if (manifest_path.empty()) return bfl::default_manifest();
    return bfl::parse_manifest(load_file(manifest_path));
  }
};

void add_common(CLI::App* cmd, common_options& opt, bool with_chirality) {
  cmd->add_option("file", opt.file, "census-format link file")->required();
  cmd->add_option("--manifest", opt.manifest_path,
                  "override manifest (text: record class label crossings "
                  "components h1)");
  if (with_chirality)
    cmd->add_option("--chirality", opt.chirality_name,
                    "crossing convention: which edge of a declared pair "
                    "passes underneath")
        ->check(CLI::IsMember({"default", "mirror"}));
  cmd->add_flag("--text", opt.text, "human-readable output instead of JSON");
}

void emit(const ordered_json& j, bool text, const std::string& rendered) {
  if (text)
    std::cout << rendered;
  else
    std::cout << j.dump(2) << "\n";
}

std::vector<bfl::raw_link_record> parse_records(const common_options& opt) {
  return bfl::parse_link_records(load_file(opt.file));
}

const bfl::raw_link_record& select_record(
    const std::vector<bfl::raw_link_record>& records, int number) {
  if (number < 1 || static_cast<std::size_t>(number) > records.size())
    throw bfl::error(bfl::errc::invalid_argument,
                     "record " + std::to_string(number) +
                         " out of range 1.." + std::to_string(records.size()));
  return records[static_cast<std::size_t>(number - 1)];
}

const bfl::manifest_entry* manifest_entry_for(
    const std::vector<bfl::manifest_entry>& manifest, int record) {
  for (const auto& e : manifest)
    if (e.record == record) return &e;
  return nullptr;
}

ordered_json fingerprint_json(const bfl::cover_fingerprint& fp) {
  ordered_json degrees = ordered_json::array();
  for (const auto& dc : fp.degrees) {
    ordered_json d;
    d["degree"] = dc.degree;
    d["complete"] = dc.complete;
    ordered_json covers = ordered_json::array();
    for (const auto& h : dc.homology) covers.push_back(h.to_string());
    d["covers"] = covers;
    degrees.push_back(d);
  }
  ordered_json out;
  out["max_degree"] = fp.max_degree;
  out["complete"] = fp.all_complete();
  out["degrees"] = degrees;
  return out;
}

std::string fingerprint_text(const bfl::cover_fingerprint& fp) {
  std::string s;
  for (const auto& dc : fp.degrees) {
    s += "degree " + std::to_string(dc.degree);
    if (!dc.complete) s += " (incomplete)";
    s += ":";
    if (dc.homology.empty()) s += " -";
    for (const auto& h : dc.homology) s += " [" + h.to_string() + "]";
    s += "\n";
  }
  return s;
}

// ---------------------------------------------------------------- parse --

int cmd_parse(const common_options& opt) {
  auto records = parse_records(opt);
  auto manifest = opt.manifest();

  ordered_json entries = ordered_json::array();
  bool reconciled = true;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    const auto& r = records[i];
    ordered_json e;
    e["record"] = number;
    e["vertices"] = r.vertices.size();
    e["edges"] = r.edges.size();
    e["crossings"] = r.crossing_pairs.size();
    e["components"] = r.component_markers.size();
    ordered_json warnings = ordered_json::array();
    for (const auto& d : bfl::validate_record(r))
      if (d.severity == bfl::diagnostic_severity::warning)
        warnings.push_back(d.message);
    if (!warnings.empty()) e["warnings"] = warnings;
    if (const auto* m = manifest_entry_for(manifest, number)) {
      e["class"] = m->class_id;
      e["label"] = m->label;
      e["expected_crossings"] = m->crossings;
      e["expected_components"] = m->components;
      bool ok = m->crossings == static_cast<int>(r.crossing_pairs.size()) &&
                m->components == static_cast<int>(r.component_markers.size());
      e["reconciled"] = ok;
      reconciled = reconciled && ok;
    } else {
      e["reconciled"] = false;  // record beyond the manifest
      reconciled = false;
    }
    entries.push_back(std::move(e));
  }

  ordered_json out;
  out["file"] = opt.file;
  out["records"] = records.size();
  out["reconciled"] = reconciled;
  out["entries"] = entries;

  std::string text = "records: " + std::to_string(records.size()) + "\n";
  for (const auto& e : entries) {
    text += "  record " + e["record"].dump() + ": " + e["crossings"].dump() +
            " crossings, " + e["components"].dump() + " components";
    if (e.contains("class"))
      text += " (" + e["class"].get<std::string>() + " " +
              e["label"].get<std::string>() + ")";
    text += e["reconciled"].get<bool>() ? "" : "  MISMATCH";
    text += "\n";
  }
  emit(out, opt.text, text);

  if (!reconciled) {
    print_error_object(exit_manifest, "manifest_mismatch",
                       "crossing/component counts disagree with the manifest",
                       {});
    return exit_manifest;
  }
  return exit_ok;
}

// ----------------------------------------------------------- invariants --

int cmd_invariants(const common_options& opt, int record, bool with_bracket) {
  auto records = parse_records(opt);
  auto manifest = opt.manifest();
  auto d = bfl::build_diagram(select_record(records, record),
                              opt.handedness());

  auto lm = bfl::linking_matrix(d);
  auto h1 = bfl::h1_from_linking(lm);

  ordered_json out;
  out["record"] = record;
  out["chirality"] = bfl::chirality_name(d.handedness);
  out["components"] = d.component_count();
  out["crossings"] = d.crossing_count();
  out["total_writhe"] = bfl::total_writhe(d);
  ordered_json sw = ordered_json::array();
  for (std::size_t c = 0; c < d.component_count(); ++c)
    sw.push_back(bfl::self_writhe(d, c));
  out["self_writhes"] = sw;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < lm.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < lm.cols(); ++j)
      row.push_back(lm(i, j).convert_to<long long>());
    rows.push_back(row);
  }
  out["linking_matrix"] = rows;
  out["h1"] = h1.to_string();
  if (const auto* m = manifest_entry_for(manifest, record)) {
    out["expected_h1"] = m->h1;
    out["h1_matches_expected"] = m->h1 == h1.to_string();
  }
  if (with_bracket) out["bracket"] = bfl::kauffman_bracket(d).to_string();

  std::string text;
  text += "record " + std::to_string(record) + " (" +
          std::string(bfl::chirality_name(d.handedness)) + ")\n";
  text += "crossings: " + std::to_string(d.crossing_count()) +
          ", components: " + std::to_string(d.component_count()) + "\n";
  text += "total writhe: " + std::to_string(bfl::total_writhe(d)) + "\n";
  text += "linking matrix:\n";
  for (std::size_t i = 0; i < lm.rows(); ++i) {
    text += " ";
    for (std::size_t j = 0; j < lm.cols(); ++j)
      text += " " + lm(i, j).str();
    text += "\n";
  }
  text += "H1: " + h1.to_string() + "\n";
  if (with_bracket)
    text += "bracket: " + bfl::kauffman_bracket(d).to_string() + "\n";
  emit(out, opt.text, text);
  return exit_ok;
}

// ---------------------------------------------------------------- group --

int cmd_group(const common_options& opt, int record,
              std::vector<std::size_t> limits) {
  auto records = parse_records(opt);
  auto d = bfl::build_diagram(select_record(records, record),
                              opt.handedness());
  auto raw = bfl::filled_group(d);
  auto simplified = bfl::tietze_simplify(raw, limits[0], limits[1]);

  std::size_t total = 0;
  for (const auto& r : simplified.relators) total += r.size();

  ordered_json out;
  out["record"] = record;
  out["chirality"] = bfl::chirality_name(d.handedness);
  out["generators"] = simplified.generator_names;
  ordered_json rels = ordered_json::array();
  for (const auto& r : simplified.relators)
    rels.push_back(bfl::word_to_string(r, simplified.generator_names));
  out["relators"] = rels;
  out["abelianization"] = bfl::abelianization(simplified).to_string();
  ordered_json stats;
  stats["generators_before"] = raw.generator_count();
  stats["relators_before"] = raw.relators.size();
  stats["generators"] = simplified.generator_count();
  stats["relators"] = simplified.relators.size();
  stats["total_relator_length"] = total;
  stats["max_relator_length"] = limits[0];
  stats["max_passes"] = limits[1];
  out["stats"] = stats;

  std::string text = bfl::to_text(simplified);
  text += "# abelianization: " + bfl::abelianization(simplified).to_string() +
          "\n";
  text += "# generators " + std::to_string(raw.generator_count()) + " -> " +
          std::to_string(simplified.generator_count()) + ", relators " +
          std::to_string(raw.relators.size()) + " -> " +
          std::to_string(simplified.relators.size()) + "\n";
  emit(out, opt.text, text);
  return exit_ok;
}

// --------------------------------------------------------------- covers --

int cmd_covers(const common_options& opt, int record, int degree, bool up_to,
               std::uint64_t budget) {
  auto records = parse_records(opt);
  auto d = bfl::build_diagram(select_record(records, record),
                              opt.handedness());
  auto g = bfl::filled_group(d);
  auto mode = up_to ? bfl::subgroup_mode::up_to_index
                    : bfl::subgroup_mode::exact_index;
  auto res = bfl::low_index_search(g, degree, mode, {budget});

  ordered_json covers = ordered_json::array();
  std::string text;
  for (const auto& t : res.tables) {
    auto h = bfl::cover_homology(g, t);
    ordered_json c;
    c["index"] = t.degree;
    c["homology"] = h.to_string();
    ordered_json table = ordered_json::array();
    for (int coset = 0; coset < t.degree; ++coset) {
      ordered_json row = ordered_json::array();
      for (int col = 0; col < 2 * t.generator_count; ++col)
        row.push_back(t.cell(coset, col));
      table.push_back(row);
    }
    c["table"] = table;
    covers.push_back(std::move(c));
    text += "index " + std::to_string(t.degree) + ": " + h.to_string() + "\n";
  }

  ordered_json out;
  out["record"] = record;
  out["degree"] = degree;
  out["mode"] = up_to ? "up_to" : "exact";
  out["complete"] = res.complete;
  out["definitions_used"] = res.definitions_used;
  out["covers"] = covers;
  text += res.complete ? "" : "search incomplete: budget exhausted\n";
  emit(out, opt.text, text);

  if (!res.complete) {
    print_error_object(exit_budget, "budget_exceeded",
                       "subgroup search exhausted its definition budget", {});
    return exit_budget;
  }
  return exit_ok;
}

// ---------------------------------------------------- fingerprint/compare --

int cmd_fingerprint(const common_options& opt, int record, int max_degree,
                    std::uint64_t budget) {
  auto records = parse_records(opt);
  auto d = bfl::build_diagram(select_record(records, record),
                              opt.handedness());
  auto fp = bfl::fingerprint(bfl::filled_group(d), max_degree, {budget});

  ordered_json out;
  out["record"] = record;
  out["chirality"] = bfl::chirality_name(d.handedness);
  ordered_json fpj = fingerprint_json(fp);
  for (auto& [k, v] : fpj.items()) out[k] = v;
  emit(out, opt.text,
       "record " + std::to_string(record) + "\n" + fingerprint_text(fp));

  if (!fp.all_complete()) {
    print_error_object(exit_budget, "budget_exceeded",
                       "fingerprint has incomplete degrees", {});
    return exit_budget;
  }
  return exit_ok;
}

int cmd_compare(const common_options& opt, std::vector<int> pair,
                int max_degree, std::uint64_t budget) {
  auto records = parse_records(opt);
  auto da = bfl::build_diagram(select_record(records, pair[0]),
                               opt.handedness());
  auto db = bfl::build_diagram(select_record(records, pair[1]),
                               opt.handedness());
  auto fa = bfl::fingerprint(bfl::filled_group(da), max_degree, {budget});
  auto fb = bfl::fingerprint(bfl::filled_group(db), max_degree, {budget});
  auto res = bfl::compare_fingerprints(fa, fb);

  ordered_json out;
  out["records"] = pair;
  out["max_degree"] = max_degree;
  out["verdict"] = bfl::verdict_name(res.kind);
  out["degree"] = res.degree;
  out["all_complete"] = res.all_complete;
  out["fingerprints"] =
      ordered_json::array({fingerprint_json(fa), fingerprint_json(fb)});

  std::string text = "records " + std::to_string(pair[0]) + " and " +
                     std::to_string(pair[1]) + ": " +
                     bfl::verdict_name(res.kind);
  if (res.kind == bfl::verdict::distinguished)
    text += " at degree " + std::to_string(res.degree);
  else
    text += " up to degree " + std::to_string(res.degree);
  text += res.all_complete ? "\n" : " (incomplete degrees were skipped)\n";
  emit(out, opt.text, text);

  if (res.kind == bfl::verdict::indistinguishable && !res.all_complete) {
    print_error_object(exit_budget, "budget_exceeded",
                       "verdict is based on incomplete fingerprints", {});
    return exit_budget;
  }
  return exit_ok;
}

// ------------------------------------------------------------- classify --

int cmd_classify(const common_options& opt, const std::string& class_id,
                 int max_degree, std::uint64_t budget) {
  auto records = parse_records(opt);
  auto manifest = opt.manifest();
  auto members = bfl::records_in_class(manifest, class_id);

  // Bucket by identical per-degree data (including completeness flags):
  // records in one bucket are not distinguished at this depth.
  std::vector<std::pair<std::string, std::vector<int>>> buckets;
  std::map<int, ordered_json> fps;
  bool all_complete = true;
  for (int number : members) {
    auto d = bfl::build_diagram(select_record(records, number),
                                opt.handedness());
    auto fp = bfl::fingerprint(bfl::filled_group(d), max_degree, {budget});
    all_complete = all_complete && fp.all_complete();
    ordered_json j = fingerprint_json(fp);
    fps[number] = j;
    std::string key = j["degrees"].dump();
    bool found = false;
    for (auto& [k, v] : buckets)
      if (k == key) {
        v.push_back(number);
        found = true;
      }
    if (!found) buckets.emplace_back(key, std::vector<int>{number});
  }

  ordered_json out;
  out["class"] = class_id;
  out["records"] = members;
  out["max_degree"] = max_degree;
  out["all_complete"] = all_complete;
  ordered_json bucket_json = ordered_json::array();
  std::string text = "class " + class_id + ": " +
                     std::to_string(buckets.size()) + " bucket(s) at depth " +
                     std::to_string(max_degree) + "\n";
  for (const auto& [key, nums] : buckets) {
    ordered_json b;
    b["records"] = nums;
    b["fingerprint"] = fps[nums.front()];
    bucket_json.push_back(std::move(b));
    text += "  bucket:";
    for (int n : nums) text += " " + std::to_string(n);
    text += "\n";
  }
  out["buckets"] = bucket_json;
  out["note"] =
      "records sharing a bucket are not distinguished at this depth; no "
      "homeomorphism is claimed";
  emit(out, opt.text, text);

  if (!all_complete) {
    print_error_object(exit_budget, "budget_exceeded",
                       "classification has incomplete fingerprints", {});
    return exit_budget;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blackboard-framed link census tools"};
  app.require_subcommand(1);

  common_options opt;
  int record = 1;
  int degree = 5;
  int max_degree = 5;
  bool with_bracket = false;
  bool up_to = false;
  std::uint64_t budget = bfl::search_budget{}.max_definitions;
  std::vector<std::size_t> limits{64, 20};
  std::vector<int> pair;
  std::string class_id;

  CLI::App* parse = app.add_subcommand(
      "parse", "parse and validate a link file; reconcile with the manifest");
  add_common(parse, opt, false);

  CLI::App* invariants = app.add_subcommand(
      "invariants",
      "writhes, linking matrix and first homology of one record");
  add_common(invariants, opt, true);
  invariants->add_option("--record", record, "record number (1-based)")
      ->required();
  invariants->add_flag("--bracket", with_bracket,
                       "include the Kauffman bracket of the diagram");

  CLI::App* group = app.add_subcommand(
      "group", "fundamental-group presentation of the surgered manifold");
  add_common(group, opt, true);
  group->add_option("--record", record, "record number (1-based)")
      ->required();
  group
      ->add_option("--simplify-limits", limits,
                   "tietze limits: max relator length, max passes")
      ->delimiter(',')
      ->expected(2);

  CLI::App* covers = app.add_subcommand(
      "covers", "low-index subgroups and their cover homology");
  add_common(covers, opt, true);
  covers->add_option("--record", record, "record number (1-based)")
      ->required();
  covers->add_option("--degree", degree, "cover degree bound")->required();
  covers->add_flag("--up-to", up_to,
                   "all degrees 1..n instead of exactly n");
  bool exact_flag = false;
  covers->add_flag("--exact", exact_flag, "exactly degree n (default)");
  covers->add_option("--budget", budget, "search definition budget");

  CLI::App* fingerprint = app.add_subcommand(
      "fingerprint", "per-degree cover homology fingerprint of one record");
  add_common(fingerprint, opt, true);
  fingerprint->add_option("--record", record, "record number (1-based)")
      ->required();
  fingerprint->add_option("--max-degree", max_degree,
                          "largest cover degree");
  fingerprint->add_option("--budget", budget, "search definition budget");

  CLI::App* compare = app.add_subcommand(
      "compare", "compare the fingerprints of two records");
  add_common(compare, opt, true);
  compare->add_option("--records", pair, "two record numbers, e.g. 1,2")
      ->delimiter(',')
      ->expected(2)
      ->required();
  compare->add_option("--max-degree", max_degree, "largest cover degree");
  compare->add_option("--budget", budget, "search definition budget");

  CLI::App* classify = app.add_subcommand(
      "classify", "partition a class's records by fingerprint");
  add_common(classify, opt, true);
  classify->add_option("--class", class_id, "class id, e.g. 15t16")
      ->required();
  classify->add_option("--max-degree", max_degree, "largest cover degree");
  classify->add_option("--budget", budget, "search definition budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse->parsed()) return cmd_parse(opt);
    if (invariants->parsed()) return cmd_invariants(opt, record, with_bracket);
    if (group->parsed()) return cmd_group(opt, record, limits);
    if (covers->parsed())
      return cmd_covers(opt, record, degree, up_to, budget);
    if (fingerprint->parsed())
      return cmd_fingerprint(opt, record, max_degree, budget);
    if (compare->parsed()) return cmd_compare(opt, pair, max_degree, budget);
    if (classify->parsed())
      return cmd_classify(opt, class_id, max_degree, budget);
  } catch (const bfl::parse_error& e) {
    ordered_json extra;
    extra["record_index"] = e.record_index();
    extra["offset"] = e.byte_offset();
    print_error_object(exit_parse, "parse_error", e.what(), extra);
    return exit_parse;
  } catch (const bfl::error& e) {
    int code = exit_code_for(e);
    print_error_object(code, bfl::errc_name(e.code()), e.what(), {});
    return code;
  } catch (const std::exception& e) {
    print_error_object(exit_other, "internal_error", e.what(), {});
    return exit_other;
  }
  return exit_other;
}
