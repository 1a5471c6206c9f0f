#include "fedgbdt/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fedgbdt/rng.hpp"

namespace fedgbdt {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

bool is_missing(const std::string& cell) {
    if (cell.empty()) return true;
    std::string low;
    for (char c : cell) low.push_back(char(std::tolower(c)));
    return low == "na" || low == "nan" || low == "null";
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [p, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && p == end;
}

std::string format_double(double v) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double column_median(std::vector<double> vals) {
    if (vals.empty()) return 0.0;
    std::sort(vals.begin(), vals.end());
    const size_t mid = vals.size() / 2;
    if (vals.size() % 2 == 1) return vals[mid];
    return vals[mid - 1] + (vals[mid] - vals[mid - 1]) / 2.0;
}

} // namespace

Schema Schema::parse(const std::string& text) {
    Schema schema;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "label") {
            if (!(ls >> schema.label_name))
                throw SchemaError("schema line " + std::to_string(lineno) + ": label needs a name");
        } else if (kind == "ignore") {
            std::string name;
            if (!(ls >> name))
                throw SchemaError("schema line " + std::to_string(lineno) + ": ignore needs a name");
            schema.ignored.push_back(name);
        } else if (kind == "feature") {
            FeatureSchema f;
            std::string fkind;
            if (!(ls >> f.name >> fkind))
                throw SchemaError("schema line " + std::to_string(lineno) + ": malformed feature");
            if (fkind == "continuous") {
                if (!(ls >> f.min >> f.max) || !(f.min < f.max))
                    throw SchemaError("schema line " + std::to_string(lineno) +
                                      ": continuous feature needs min < max");
                f.kind = FeatureSchema::Kind::continuous;
            } else if (fkind == "discrete") {
                f.kind = FeatureSchema::Kind::discrete;
                double v;
                while (ls >> v) f.classes.push_back(v);
                if (f.classes.empty())
                    throw SchemaError("schema line " + std::to_string(lineno) +
                                      ": discrete feature needs classes");
                std::vector<double> sorted = f.classes;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                    throw SchemaError("schema line " + std::to_string(lineno) +
                                      ": duplicate class value");
            } else {
                throw SchemaError("schema line " + std::to_string(lineno) + ": unknown kind " + fkind);
            }
            schema.features.push_back(std::move(f));
        } else {
            throw SchemaError("schema line " + std::to_string(lineno) + ": unknown directive " + kind);
        }
    }
    if (schema.features.empty()) throw SchemaError("schema declares no features");
    return schema;
}

Schema Schema::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw SchemaError("cannot open schema file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

std::string Schema::to_text() const {
    std::ostringstream os;
    if (!label_name.empty()) os << "label " << label_name << "\n";
    for (const std::string& name : ignored) os << "ignore " << name << "\n";
    for (const FeatureSchema& f : features) {
        os << "feature " << f.name;
        if (f.kind == FeatureSchema::Kind::continuous) {
            os << " continuous " << format_double(f.min) << " " << format_double(f.max);
        } else {
            os << " discrete";
            for (double c : f.classes) os << " " << format_double(c);
        }
        os << "\n";
    }
    return os.str();
}

void Schema::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw SchemaError("cannot write schema file: " + path);
    os << to_text();
}

int Schema::feature_index(const std::string& name) const {
    for (size_t i = 0; i < features.size(); ++i)
        if (features[i].name == name) return int(i);
    return -1;
}

FeatureColumn Dataset::column(uint32_t feature) const {
    FeatureColumn col;
    col.feature_index = feature;
    col.ids = ids;
    col.values.resize(n());
    for (size_t r = 0; r < n(); ++r) col.values[r] = at(r, feature);
    return col;
}

void Dataset::validate() const {
    if (x.size() != n() * m()) throw DataError("dataset: shape mismatch");
    if (!labels.empty() && labels.size() != n()) throw DataError("dataset: label count mismatch");
    for (uint8_t y : labels)
        if (y > 1) throw DataError("dataset: labels must be 0/1");
    for (size_t i = 1; i < ids.size(); ++i)
        if (ids[i] <= ids[i - 1]) throw DataError("dataset: ids not strictly ascending");
}

Dataset load_csv(const std::string& path, const Schema& schema, CsvLoadStats* stats) {
    std::ifstream is(path);
    if (!is) throw DataError("cannot open csv file: " + path);

    std::string header_line;
    if (!std::getline(is, header_line) || header_line.empty())
        throw DataError("csv file is empty: " + path);
    const std::vector<std::string> header = split_csv_line(header_line);

    const size_t m = schema.features.size();
    std::vector<int> col_of_feature(m, -1);
    int label_col = -1;
    for (size_t c = 0; c < header.size(); ++c) {
        const int f = schema.feature_index(header[c]);
        if (f >= 0) {
            if (col_of_feature[size_t(f)] != -1)
                throw SchemaError("csv: duplicate column " + header[c]);
            col_of_feature[size_t(f)] = int(c);
        } else if (!schema.label_name.empty() && header[c] == schema.label_name) {
            label_col = int(c);
        } else if (std::find(schema.ignored.begin(), schema.ignored.end(), header[c]) ==
                   schema.ignored.end()) {
            throw SchemaError("csv: column not in schema: '" + header[c] + "'");
        }
    }
    for (size_t f = 0; f < m; ++f)
        if (col_of_feature[f] == -1)
            throw SchemaError("csv: schema feature missing from header: " + schema.features[f].name);
    if (!schema.label_name.empty() && label_col == -1)
        throw SchemaError("csv: label column missing: " + schema.label_name);

    Dataset ds;
    ds.schema = schema;
    std::vector<std::vector<size_t>> missing_at(m); // rows needing imputation
    std::string line;
    size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError("csv line " + std::to_string(lineno) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        const size_t row = ds.ids.size();
        ds.ids.push_back(SampleId(row));
        for (size_t f = 0; f < m; ++f) {
            const std::string& cell = cells[size_t(col_of_feature[f])];
            double v = 0.0;
            if (is_missing(cell)) {
                missing_at[f].push_back(row);
            } else if (!parse_double(cell, v)) {
                throw DataError("csv line " + std::to_string(lineno) + ": unparseable cell '" +
                                cell + "' in column " + schema.features[f].name);
            }
            ds.x.push_back(v);
        }
        if (label_col >= 0) {
            const std::string& cell = cells[size_t(label_col)];
            double v = 0.0;
            if (!parse_double(cell, v) || (v != 0.0 && v != 1.0))
                throw DataError("csv line " + std::to_string(lineno) + ": label must be 0 or 1");
            ds.labels.push_back(uint8_t(v));
        }
    }
    if (ds.ids.empty()) throw DataError("csv has no data rows: " + path);

    size_t imputed = 0;
    for (size_t f = 0; f < m; ++f) {
        if (missing_at[f].empty()) continue;
        std::vector<double> present;
        present.reserve(ds.n());
        std::vector<bool> is_gap(ds.n(), false);
        for (size_t row : missing_at[f]) is_gap[row] = true;
        for (size_t r = 0; r < ds.n(); ++r)
            if (!is_gap[r]) present.push_back(ds.at(r, f));
        const double med = column_median(std::move(present));
        for (size_t row : missing_at[f]) ds.at(row, f) = med;
        imputed += missing_at[f].size();
    }
    if (stats) {
        stats->rows = ds.n();
        stats->imputed_cells = imputed;
    }
    ds.validate();
    return ds;
}

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot write csv file: " + path);
    os << "id";
    for (const FeatureSchema& f : dataset.schema.features) os << "," << f.name;
    if (dataset.has_labels()) os << "," << dataset.schema.label_name;
    os << "\n";
    for (size_t r = 0; r < dataset.n(); ++r) {
        os << dataset.ids[r];
        for (size_t f = 0; f < dataset.m(); ++f) os << "," << format_double(dataset.at(r, f));
        if (dataset.has_labels()) os << "," << int(dataset.labels[r]);
        os << "\n";
    }
}

namespace {

// Materializes a row-subset (by position) of `src`, sorted by sample ID.
Dataset take_rows(const Dataset& src, std::vector<size_t> rows, bool keep_labels) {
    std::sort(rows.begin(), rows.end(),
              [&](size_t a, size_t b) { return src.ids[a] < src.ids[b]; });
    Dataset out;
    out.schema = src.schema;
    if (!keep_labels) out.schema.label_name.clear();
    out.ids.reserve(rows.size());
    out.x.reserve(rows.size() * src.m());
    for (size_t r : rows) {
        out.ids.push_back(src.ids[r]);
        for (size_t f = 0; f < src.m(); ++f) out.x.push_back(src.at(r, f));
        if (keep_labels && src.has_labels()) out.labels.push_back(src.labels[r]);
    }
    return out;
}

} // namespace

std::pair<Dataset, Dataset> split_train_test(const Dataset& dataset, uint64_t seed) {
    const size_t n = dataset.n();
    if (n < 3) throw ArgumentError("split_train_test: need at least 3 samples");
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    Rng rng(derive_seed(seed, 0x74657374u)); // stream tag for the split
    for (size_t i = n - 1; i > 0; --i) {
        const size_t j = size_t(rng.uniform_int(i + 1));
        std::swap(order[i], order[j]);
    }
    const size_t n_train = (2 * n + 2) / 3; // ceil(2n/3)
    std::vector<size_t> train_rows(order.begin(), order.begin() + long(n_train));
    std::vector<size_t> test_rows(order.begin() + long(n_train), order.end());
    return {take_rows(dataset, std::move(train_rows), true),
            take_rows(dataset, std::move(test_rows), true)};
}

std::vector<uint32_t> vertical_feature_offsets(size_t m, int l) {
    const size_t base = m / size_t(l);
    const size_t extra = m % size_t(l);
    std::vector<uint32_t> offsets;
    uint32_t pos = 0;
    for (int i = 0; i < l; ++i) {
        offsets.push_back(pos);
        pos += uint32_t(base + (size_t(i) < extra ? 1 : 0));
    }
    return offsets;
}

std::vector<Dataset> partition_vertical(const Dataset& dataset, int l) {
    const size_t m = dataset.m();
    if (l < 1 || m < size_t(l)) throw ArgumentError("partition_vertical: need m >= l >= 1");
    const std::vector<uint32_t> offsets = vertical_feature_offsets(m, l);

    std::vector<Dataset> shards;
    for (int i = 0; i < l; ++i) {
        const size_t begin = offsets[size_t(i)];
        const size_t end = (i + 1 < l) ? offsets[size_t(i) + 1] : m;
        Dataset shard;
        shard.ids = dataset.ids;
        shard.schema.features.assign(dataset.schema.features.begin() + long(begin),
                                     dataset.schema.features.begin() + long(end));
        shard.x.reserve(dataset.n() * (end - begin));
        for (size_t r = 0; r < dataset.n(); ++r)
            for (size_t f = begin; f < end; ++f) shard.x.push_back(dataset.at(r, f));
        if (i == l - 1 && dataset.has_labels()) {
            shard.labels = dataset.labels;
            shard.schema.label_name = dataset.schema.label_name;
        }
        shards.push_back(std::move(shard));
    }
    return shards;
}

std::vector<Dataset> partition_horizontal(const Dataset& dataset, int l, uint64_t seed) {
    const size_t n = dataset.n();
    if (l < 1 || n < size_t(l)) throw ArgumentError("partition_horizontal: need n >= l >= 1");
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    Rng rng(derive_seed(seed, 0x686f727au)); // stream tag for row sharding
    for (size_t i = n - 1; i > 0; --i) {
        const size_t j = size_t(rng.uniform_int(i + 1));
        std::swap(order[i], order[j]);
    }
    const size_t base = n / size_t(l);
    const size_t extra = n % size_t(l);
    std::vector<Dataset> shards;
    size_t pos = 0;
    for (int i = 0; i < l; ++i) {
        const size_t len = base + (size_t(i) < extra ? 1 : 0);
        std::vector<size_t> rows(order.begin() + long(pos), order.begin() + long(pos + len));
        pos += len;
        shards.push_back(take_rows(dataset, std::move(rows), true));
    }
    return shards;
}

Dataset synth_binary(size_t n, size_t m, double separation, uint64_t seed) {
    if (n < 1 || m < 1) throw ArgumentError("synth_binary: n and m must be >= 1");
    Dataset ds;
    Rng rng(derive_seed(seed, 0x73796e74u)); // stream tag for synthesis
    const double bound = separation / 2.0 + 8.0;
    for (size_t f = 0; f < m; ++f) {
        FeatureSchema fs;
        fs.name = "f" + std::to_string(f);
        fs.kind = FeatureSchema::Kind::continuous;
        fs.min = -bound;
        fs.max = bound;
        ds.schema.features.push_back(std::move(fs));
    }
    ds.schema.label_name = "label";
    ds.ids.resize(n);
    ds.x.resize(n * m);
    ds.labels.resize(n);
    for (size_t r = 0; r < n; ++r) {
        ds.ids[r] = SampleId(r);
        const bool positive = rng.next_double() < 0.5;
        ds.labels[r] = positive ? 1 : 0;
        const double shift = positive ? separation / 2.0 : -separation / 2.0;
        for (size_t f = 0; f < m; ++f) ds.at(r, f) = shift + rng.next_gaussian();
    }
    return ds;
}

} // namespace fedgbdt
