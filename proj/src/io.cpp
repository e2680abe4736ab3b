#include "io.hpp"

#include "error.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace majz {

namespace {

constexpr int kCsvDigits = 20;

// Builds a DOM in which every floating-point literal keeps its source text
// (as a JSON string) so it can be parsed at full precision later.
class TextPreservingBuilder : public nlohmann::json_sax<Json> {
public:
    bool null() override { return put(Json(nullptr)); }
    bool boolean(bool v) override { return put(Json(v)); }
    bool number_integer(number_integer_t v) override { return put(Json(std::to_string(v))); }
    bool number_unsigned(number_unsigned_t v) override { return put(Json(std::to_string(v))); }
    bool number_float(number_float_t, const string_t& s) override { return put(Json(s)); }
    bool string(string_t& v) override { return put(Json(v)); }
    bool binary(binary_t&) override { return put(Json(nullptr)); }
    bool start_object(std::size_t) override { return open(Json::object()); }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override { return open(Json::array()); }
    bool end_array() override { return close(); }
    bool key(string_t& k) override {
        key_ = k;
        return true;
    }
    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
        throw Error(ErrorCode::Parse, "byte " + std::to_string(position) + ": " + ex.what());
    }

    Json take() { return std::move(root_); }

private:
    Json* place(Json v) {
        if (stack_.empty()) {
            root_ = std::move(v);
            return &root_;
        }
        Json* top = stack_.back();
        if (top->is_array()) {
            top->push_back(std::move(v));
            return &top->back();
        }
        if (top->contains(key_)) {
            throw Error(ErrorCode::Parse, "duplicate key '" + key_ + "'");
        }
        Json& slot = (*top)[key_];
        slot = std::move(v);
        return &slot;
    }
    bool put(Json v) {
        place(std::move(v));
        return true;
    }
    bool open(Json v) {
        stack_.push_back(place(std::move(v)));
        return true;
    }
    bool close() {
        stack_.pop_back();
        return true;
    }

    Json root_;
    std::vector<Json*> stack_;
    std::string key_;
};

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::Parse, where + ": " + what);
}

Real number_at(const Json& v, const std::string& where, unsigned precision) {
    if (!v.is_string()) {
        fail_at(where, "expected a number or a decimal string");
    }
    try {
        return Real::parse(v.get<std::string>(), precision);
    } catch (const Error& e) {
        fail_at(where, e.what());
    }
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [k, _] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            known = known || k == a;
        }
        if (!known) {
            fail_at(where + "/" + k, "unknown field");
        }
    }
}

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            line.push_back(',');
        }
        line += cells[i];
    }
    line.push_back('\n');
    return line;
}

}  // namespace

Ell1Seq parse_sequence(std::string_view text, unsigned precision, bool positive_entries) {
    TextPreservingBuilder builder;
    const std::string buf(text);
    Json::sax_parse(buf, &builder);
    const Json doc = builder.take();
    if (!doc.is_object()) {
        fail_at("/", "expected an object with a 'prefix' array");
    }
    reject_unknown(doc, {"prefix", "tail"}, "");
    if (!doc.contains("prefix") || !doc["prefix"].is_array()) {
        fail_at("/prefix", "missing or not an array");
    }
    std::vector<Real> prefix;
    const Json& arr = doc["prefix"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "/prefix/" + std::to_string(i);
        Real x = number_at(arr[i], where, precision);
        if (x.sign() < 0) {
            fail_at(where, "entry is negative");
        }
        if (positive_entries && x.sign() <= 0) {
            fail_at(where, "entry must be positive");
        }
        prefix.push_back(std::move(x));
    }
    if (positive_entries && prefix.empty()) {
        fail_at("/prefix", "must not be empty");
    }
    TailModel tail = ZeroTail{};
    if (doc.contains("tail")) {
        const Json& t = doc["tail"];
        if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string()) {
            fail_at("/tail", "expected an object with a 'kind' string");
        }
        const auto kind = t["kind"].get<std::string>();
        if (kind == "zero") {
            reject_unknown(t, {"kind"}, "/tail");
        } else if (kind == "geometric") {
            reject_unknown(t, {"kind", "first", "ratio"}, "/tail");
            if (!t.contains("first")) {
                fail_at("/tail/first", "missing");
            }
            if (!t.contains("ratio")) {
                fail_at("/tail/ratio", "missing");
            }
            Real first = number_at(t["first"], "/tail/first", precision);
            Real ratio = number_at(t["ratio"], "/tail/ratio", precision);
            if (!(first > 0L)) {
                fail_at("/tail/first", "must be positive");
            }
            if (!(ratio > 0L) || !(ratio < 1L)) {
                fail_at("/tail/ratio", "must lie in (0, 1)");
            }
            tail = GeometricTail{std::move(first), std::move(ratio)};
        } else {
            fail_at("/tail/kind", "expected 'zero' or 'geometric'");
        }
    }
    return Ell1Seq(std::move(prefix), std::move(tail));
}

Ell1Seq load_sequence(const std::string& path, unsigned precision, bool positive_entries) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, path + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_sequence(ss.str(), precision, positive_entries);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string validation_error(const Ell1Seq& seq) {
    const Verdict v = validate(seq);
    if (!v.is_fails()) {
        return {};
    }
    const auto& w = std::get<InvariantWitness>(*v.witness());
    if (w.index < seq.prefix().size()) {
        return "/prefix/" + std::to_string(w.index) + ": " + w.what;
    }
    return "/tail: " + w.what;
}

Json to_json(const Real& x) { return x.to_string(); }

Json to_json(const Ell1Seq& seq) {
    Json prefix = Json::array();
    for (const auto& x : seq.prefix()) {
        prefix.push_back(to_json(x));
    }
    Json tail = {{"kind", "zero"}};
    if (const auto* g = seq.geometric_tail()) {
        tail = {{"kind", "geometric"}, {"first", to_json(g->first)}, {"ratio", to_json(g->ratio)}};
    }
    return {{"prefix", prefix}, {"tail", tail}};
}

Json to_json(const Witness& w) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IndexWitness>) {
                return {{"type", "index"}, {"k", x.k}, {"sum_a", to_json(x.sum_a)}, {"sum_b", to_json(x.sum_b)}};
            } else if constexpr (std::is_same_v<T, ThresholdWitness>) {
                return {{"type", "threshold"}, {"t", to_json(x.t)}, {"g", to_json(x.value)}};
            } else if constexpr (std::is_same_v<T, DerivativeWitness>) {
                return {{"type", "derivative"}, {"n", x.n}, {"s", to_json(x.s)}, {"signed_value", to_json(x.value)}};
            } else if constexpr (std::is_same_v<T, PointWitness>) {
                return {{"type", "point"}, {"s", to_json(x.s)}, {"value", to_json(x.value)}};
            } else if constexpr (std::is_same_v<T, MassWitness>) {
                return {{"type", "mass"}, {"mass_a", to_json(x.mass_a)}, {"mass_b", to_json(x.mass_b)}};
            } else {
                return {{"type", "invariant"}, {"index", x.index}, {"what", x.what}};
            }
        },
        w);
}

Json to_json(const Verdict& v) {
    Json j = {{"verdict", to_string(v.kind())}};
    if (v.witness()) {
        j["witness"] = to_json(*v.witness());
    }
    if (v.gap()) {
        j["gap"] = to_json(*v.gap());
    }
    if (!v.reason().empty()) {
        j["reason"] = v.reason();
    }
    return j;
}

Json to_json(const CMReport& r, bool with_grid) {
    Json j = to_json(r.verdict);
    j["orders_checked"] = r.orders_checked;
    j["precision_bits"] = r.precision_bits;
    j["precondition_met"] = r.precondition_met;
    j["evaluations"] = r.evaluations;
    j["grid_points"] = r.grid.size();
    if (!r.grid.empty()) {
        j["grid_min"] = to_json(r.grid.front());
        j["grid_max"] = to_json(r.grid.back());
    }
    if (with_grid) {
        Json g = Json::array();
        for (const auto& s : r.grid) {
            g.push_back(to_json(s));
        }
        j["grid"] = g;
    }
    if (r.min_signed_value) {
        j["min_signed_value"] = {{"value", to_json(*r.min_signed_value)}, {"n", r.min_n}, {"s", to_json(*r.min_s)}};
    }
    if (r.hockey_stick_witness) {
        j["hockey_stick_witness"] = {{"t", to_json(r.hockey_stick_witness->t)},
                                     {"g", to_json(r.hockey_stick_witness->value)}};
    }
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j;
}

Json to_json(const TrumpReport& r) {
    Json j = to_json(r.verdict);
    j["candidates_tried"] = r.candidates_tried;
    j["plain"] = to_json(r.plain);
    if (r.catalyst) {
        j["catalyst"] = to_json(*r.catalyst);
    }
    if (r.closest) {
        j["closest"] = to_json(*r.closest);
    }
    if (r.slack) {
        j["min_partial_sum_slack"] = to_json(*r.slack);
    }
    return j;
}

Json to_json(const EvidenceRecord& r) {
    Json j = {{"hypothesis_met", r.hypothesis_met},
              {"mass", to_json(r.mass)},
              {"candidate_counterexample", r.candidate_counterexample},
              {"catalyst_found", r.search && r.search->catalyst.has_value()},
              {"note", r.note}};
    if (r.positivity) {
        j["positivity"] = to_json(*r.positivity);
    }
    if (r.search) {
        j["search"] = to_json(*r.search);
    }
    if (r.product_cm) {
        j["product_cm"] = to_json(*r.product_cm);
    }
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string zeta_table_csv(const ZetaPair& pair, const SGrid& grid, unsigned precision) {
    ZetaOptions opts;
    opts.precision_bits = precision;
    const CmEvaluator eval(pair, opts);
    std::string out = join_csv({"s", "zeta", "f", "f1", "f2", "f3"});
    for (const auto& s : grid.build(precision)) {
        const TaylorJet z = zeta_jet(pair, s, 0, precision);
        const TaylorJet f = eval.f(s, 3);
        out += join_csv({s.to_string(kCsvDigits), z.value().to_string(kCsvDigits), f.derivative(0).to_string(kCsvDigits),
                         f.derivative(1).to_string(kCsvDigits), f.derivative(2).to_string(kCsvDigits),
                         f.derivative(3).to_string(kCsvDigits)});
    }
    return out;
}

std::string cm_samples_csv(const CMReport& r) {
    std::string out = join_csv({"s", "n", "signed_value", "bound"});
    for (const auto& smp : r.samples) {
        out += join_csv({r.grid[smp.grid_index].to_string(kCsvDigits), std::to_string(smp.n),
                         smp.value.to_string(kCsvDigits), smp.bound.to_string(kCsvDigits)});
    }
    return out;
}

void append_jsonl(const std::string& path, const Json& record) {
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, path + ": cannot open log for appending");
    }
    out << record.dump() << '\n';
    if (!out) {
        throw Error(ErrorCode::Io, path + ": write failed");
    }
}

}  // namespace majz
