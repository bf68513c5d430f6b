#include "iwboost/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace iwboost {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool parse_real(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return *end == '\0' && errno == 0 && std::isfinite(out);
}

struct Header {
    std::size_t columns = 0;
    bool has_label = false;
};

// Reads up to the header line. Returns false on an empty stream.
bool read_header(std::istream& in, std::size_t& line_no, Header& header) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        double probe = 0.0;
        for (const auto& c : cells) {
            if (c.empty()) throw FormatError("empty column name in header", line_no);
            if (parse_real(c, probe))
                throw FormatError("missing header row (found numeric value '" + c + "')", line_no);
        }
        header.columns = cells.size();
        header.has_label = cells.back() == "label";
        return true;
    }
    return false;
}

}  // namespace

Dataset parse_csv(std::istream& in, std::optional<std::size_t> num_labels) {
    std::size_t line_no = 0;
    Header header;
    if (!read_header(in, line_no, header)) throw FormatError("missing header row", line_no);
    if (!header.has_label || header.columns < 2)
        throw FormatError("header must be f0,...,f{d-1},label", line_no);
    const std::size_t dim = header.columns - 1;

    std::vector<double> features;
    LabelVector labels;
    std::vector<std::size_t> lines;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.columns)
            throw FormatError("expected " + std::to_string(header.columns) + " columns, found " +
                                  std::to_string(cells.size()),
                              line_no);
        for (std::size_t j = 0; j < dim; ++j) {
            double v = 0.0;
            if (!parse_real(cells[j], v))
                throw FormatError("feature '" + cells[j] + "' is not a finite decimal number", line_no);
            features.push_back(v);
        }
        const std::string& cell = cells.back();
        char* end = nullptr;
        errno = 0;
        const long long label = std::strtoll(cell.c_str(), &end, 10);
        if (cell.empty() || *end != '\0' || errno != 0)
            throw LabelError("label '" + cell + "' is not an integer", line_no);
        if (label < 1) throw LabelError("label " + cell + " is below 1", line_no);
        if (label > 1'000'000) throw LabelError("label " + cell + " is implausibly large", line_no);
        labels.push_back(static_cast<Label>(label - 1));
        lines.push_back(line_no);
    }
    if (labels.empty()) throw FormatError("no data rows after the header", line_no);

    Label max_label = 0;
    for (std::size_t p = 0; p < labels.size(); ++p) max_label = std::max(max_label, labels[p]);
    std::size_t m = static_cast<std::size_t>(max_label) + 1;
    if (num_labels) {
        if (*num_labels < m) {
            std::size_t p = 0;
            while (static_cast<std::size_t>(labels[p]) < *num_labels) ++p;
            throw LabelError("label " + std::to_string(labels[p] + 1) + " exceeds --num-labels " +
                                 std::to_string(*num_labels),
                             lines[p]);
        }
        m = *num_labels;
    }
    if (m < 2) m = 2;  // a single observed label still lives in a two-label problem

    if (auto p = find_conflicting_duplicate(features, dim, labels))
        throw ConsistencyError("row duplicates an earlier row with a different label", lines[*p]);
    return Dataset(std::move(features), dim, std::move(labels), m);
}

Dataset load_csv(const std::string& path, std::optional<std::size_t> num_labels) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'", 0);
    return parse_csv(in, num_labels);
}

FeatureTable parse_feature_csv(std::istream& in) {
    std::size_t line_no = 0;
    Header header;
    if (!read_header(in, line_no, header)) throw FormatError("missing header row", line_no);
    FeatureTable table;
    table.dim = header.has_label ? header.columns - 1 : header.columns;
    if (table.dim == 0) throw FormatError("no feature columns", line_no);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.columns)
            throw FormatError("expected " + std::to_string(header.columns) + " columns, found " +
                                  std::to_string(cells.size()),
                              line_no);
        for (std::size_t j = 0; j < table.dim; ++j) {
            double v = 0.0;
            if (!parse_real(cells[j], v))
                throw FormatError("feature '" + cells[j] + "' is not a finite decimal number", line_no);
            table.features.push_back(v);
        }
    }
    if (table.features.empty()) throw FormatError("no data rows after the header", line_no);
    return table;
}

FeatureTable load_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'", 0);
    return parse_feature_csv(in);
}

void write_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t j = 0; j < data.dim(); ++j) out << 'f' << j << ',';
    out << "label\n";
    char buf[40];
    for (std::size_t p = 0; p < data.size(); ++p) {
        for (double v : data.row(p)) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        out << data.labels()[p] + 1 << '\n';
    }
}

void write_predictions(std::ostream& out, const LabelVector& predictions) {
    out << "prediction\n";
    for (Label a : predictions) out << a + 1 << '\n';
}

}  // namespace iwboost
