#include "iwboost/model_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace iwboost {

std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

namespace {

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

void write_labels(std::ostream& out, std::span<const Label> labels) {
    out << labels.size();
    for (Label a : labels) out << ' ' << a + 1;
}

void write_stump(std::ostream& out, const std::optional<StumpParams>& s) {
    if (!s) {
        out << "none";
        return;
    }
    if (s->direction.empty()) {
        out << "axis " << s->axis + 1;
    } else {
        out << "dir " << s->direction.size();
        for (double v : s->direction) out << ' ' << hex_double(v);
    }
    out << ' ' << hex_double(s->threshold) << ' ' << s->label_above + 1 << ' ' << s->label_below + 1;
}

void write_header(std::ostream& out, const char* algorithm) {
    out << "iwboost-model\nformat_version " << kModelFormatVersion << "\nalgorithm " << algorithm << '\n';
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Next non-empty line split into tokens.
    void next() {
        std::string text;
        while (std::getline(in_, text)) {
            ++line_;
            std::istringstream ss(text);
            tokens_.clear();
            pos_ = 0;
            for (std::string t; ss >> t;) tokens_.push_back(t);
            if (!tokens_.empty()) return;
        }
        fail("unexpected end of model file");
    }

    [[noreturn]] void fail(const std::string& why) const { throw FormatError(why, line_); }

    bool done() const { return pos_ == tokens_.size(); }
    const std::string& peek() const {
        if (done()) fail("line ended early");
        return tokens_[pos_];
    }
    std::string word() {
        const std::string& w = peek();
        ++pos_;
        return w;
    }
    void expect(const std::string& keyword) {
        const std::string w = word();
        if (w != keyword) fail("expected '" + keyword + "', found '" + w + "'");
    }
    void end_line() {
        if (!done()) fail("unexpected trailing token '" + tokens_[pos_] + "'");
    }
    std::size_t count() {
        const std::string w = word();
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(w.c_str(), &end, 10);
        if (w.empty() || *end != '\0' || errno != 0 || w[0] == '-') fail("expected a count, found '" + w + "'");
        return static_cast<std::size_t>(v);
    }
    double real() {
        const std::string w = word();
        char* end = nullptr;
        const double v = std::strtod(w.c_str(), &end);
        if (w.empty() || *end != '\0' || std::isnan(v)) fail("expected a number, found '" + w + "'");
        return v;
    }
    Label label(std::size_t m) {
        const std::size_t v = count();
        if (v < 1 || v > m) fail("label " + std::to_string(v) + " outside 1.." + std::to_string(m));
        return static_cast<Label>(v - 1);
    }
    LabelVector labels(std::size_t m) {
        const std::size_t k = count();
        LabelVector out(k);
        for (auto& a : out) a = label(m);
        return out;
    }
    std::optional<StumpParams> stump(std::size_t dim, std::size_t m) {
        const std::string kind = word();
        if (kind == "none") return std::nullopt;
        StumpParams s;
        if (kind == "axis") {
            const std::size_t axis = count();
            if (axis < 1 || axis > dim) fail("stump axis outside 1.." + std::to_string(dim));
            s.axis = axis - 1;
        } else if (kind == "dir") {
            const std::size_t k = count();
            if (k != dim) fail("stump direction has the wrong dimension");
            s.direction.resize(k);
            for (double& v : s.direction) v = real();
        } else {
            fail("unknown stump kind '" + kind + "'");
        }
        s.threshold = real();
        s.label_above = label(m);
        s.label_below = label(m);
        return s;
    }
    std::size_t keyed_count(const std::string& key) {
        next();
        expect(key);
        const std::size_t v = count();
        end_line();
        return v;
    }

private:
    std::istream& in_;
    std::vector<std::string> tokens_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

HypothesisRealization realize(const std::optional<StumpParams>& params, const std::vector<double>& rows,
                              std::size_t dim, std::size_t n) {
    HypothesisRealization h{params, LabelVector(n)};
    for (std::size_t p = 0; p < n; ++p)
        h.realized[p] = params->evaluate(std::span<const double>(rows.data() + p * dim, dim));
    return h;
}

TrainedModel read_tau(Reader& r) {
    TrainedModel model;
    model.num_labels = r.keyed_count("num_labels");
    model.dim = r.keyed_count("dim");
    model.min_rounds = r.keyed_count("min_rounds");
    if (model.num_labels < 2 || model.dim < 1) r.fail("invalid model shape");
    const std::size_t n = r.keyed_count("observations");
    model.training_features.reserve(n * model.dim);
    for (std::size_t p = 0; p < n; ++p) {
        r.next();
        r.expect("row");
        model.training_labels.push_back(r.label(model.num_labels));
        for (std::size_t j = 0; j < model.dim; ++j) model.training_features.push_back(r.real());
        r.end_line();
    }

    const std::size_t num_epochs = r.keyed_count("epochs");
    std::size_t m = model.num_labels;
    for (std::size_t i = 1; i <= num_epochs; ++i) {
        TrainedEpoch e;
        r.next();
        r.expect("epoch");
        if (r.count() != i) r.fail("epochs out of order");
        r.expect("label_size");
        e.record.label_size = r.count();
        if (e.record.label_size != m) r.fail("label size does not follow the previous elimination");
        r.expect("terminal_round");
        e.record.terminal_round = r.count();
        r.expect("perfect");
        e.record.perfect = r.count() != 0;
        r.expect("rounds");
        const std::size_t rounds = r.count();
        r.expect("elimination_count");
        e.step.count = r.count();
        r.end_line();
        if (e.step.count < 1 || e.step.count >= m) r.fail("elimination count out of range");
        e.step.next_label_size = m - e.step.count;

        const double random_guess = random_guess_score(m);
        e.record.psi = ScoreTable(n, m);
        for (std::size_t k = 0; k < rounds; ++k) {
            r.next();
            r.expect("round");
            RoundRecord rr;
            rr.alpha = r.real();
            rr.epsilon = r.real();
            rr.z = r.real();
            auto params = r.stump(model.dim, m);
            if (!params) r.fail("tau-ks rounds need stump parameters");
            r.end_line();
            if (!(rr.alpha > 0.0)) r.fail("round weight must be positive");
            rr.hypothesis = realize(params, model.training_features, model.dim, n);
            rr.edge = 1.0 - 2.0 * rr.epsilon;
            rr.gamma = rr.edge - random_guess;
            e.record.psi.add_round(rr.hypothesis.realized, rr.alpha);
            e.record.rounds.push_back(std::move(rr));
        }
        if (e.record.perfect) {
            r.next();
            r.expect("perfect_hypothesis");
            auto params = r.stump(model.dim, m);
            if (!params) r.fail("perfect hypothesis needs stump parameters");
            r.end_line();
            e.record.perfect_hypothesis = realize(params, model.training_features, model.dim, n);
        }
        r.next();
        r.expect("targets");
        e.targets = r.labels(m);
        r.end_line();
        if (e.targets.size() != n) r.fail("target vector has the wrong length");
        e.step.candidates.resize(n);
        e.step.eliminated.resize(n);
        e.step.permutation.resize(n);
        for (std::size_t p = 0; p < n; ++p) {
            r.next();
            r.expect("obs");
            e.step.candidates[p] = r.labels(m);
            e.step.eliminated[p] = r.labels(m);
            e.step.permutation[p] = r.labels(m);
            r.end_line();
            if (e.step.eliminated[p].size() != e.step.count ||
                e.step.permutation[p].size() != e.step.next_label_size)
                r.fail("elimination bookkeeping has inconsistent sizes");
            if (std::find(e.step.eliminated[p].begin(), e.step.eliminated[p].end(), e.targets[p]) !=
                e.step.eliminated[p].end())
                e.step.truth_lost.push_back(p);
        }
        r.next();
        r.expect("end_epoch");
        r.end_line();
        m = e.step.next_label_size;
        model.epochs.push_back(std::move(e));
    }
    if (m != 1) r.fail("model does not end with a single surviving label");

    r.next();
    r.expect("predictions");
    model.training_predictions = r.labels(model.num_labels);
    r.end_line();
    if (model.training_predictions.size() != n) r.fail("prediction vector has the wrong length");
    r.next();
    r.expect("truth_lost");
    const std::size_t lost = r.count();
    for (std::size_t j = 0; j < lost; ++j) {
        const std::size_t p = r.count();
        if (p < 1 || p > n) r.fail("truth_lost index out of range");
        model.truth_lost.push_back(p - 1);
    }
    r.end_line();
    r.next();
    r.expect("end");
    return model;
}

SammeModel read_samme(Reader& r, const std::string& algorithm) {
    SammeModel model;
    model.algorithm = algorithm;
    model.num_labels = r.keyed_count("num_labels");
    model.dim = r.keyed_count("dim");
    if (model.num_labels < 2 || model.dim < 1) r.fail("invalid model shape");
    const std::size_t rounds = r.keyed_count("rounds");
    auto read_realized = [&] {
        r.next();
        r.expect("realized");
        LabelVector v = r.labels(model.num_labels);
        r.end_line();
        return v;
    };
    for (std::size_t k = 0; k < rounds; ++k) {
        r.next();
        r.expect("round");
        WeightedHypothesis w;
        w.alpha = r.real();
        w.epsilon = r.real();
        w.z = r.real();
        w.hypothesis.params = r.stump(model.dim, model.num_labels);
        r.end_line();
        w.hypothesis.realized = read_realized();
        model.rounds.push_back(std::move(w));
    }
    if (r.keyed_count("perfect") != 0) {
        r.next();
        r.expect("perfect_hypothesis");
        HypothesisRealization h;
        h.params = r.stump(model.dim, model.num_labels);
        r.end_line();
        h.realized = read_realized();
        model.perfect = std::move(h);
    }
    r.next();
    r.expect("end");
    return model;
}

}  // namespace

void write_model(std::ostream& out, const TrainedModel& model) {
    write_header(out, "tau-ks");
    out << "num_labels " << model.num_labels << "\ndim " << model.dim << "\nmin_rounds " << model.min_rounds
        << "\nobservations " << model.num_observations() << '\n';
    for (std::size_t p = 0; p < model.num_observations(); ++p) {
        out << "row " << model.training_labels[p] + 1;
        for (std::size_t j = 0; j < model.dim; ++j)
            out << ' ' << hex_double(model.training_features[p * model.dim + j]);
        out << '\n';
    }
    out << "epochs " << model.num_epochs() << '\n';
    for (std::size_t i = 0; i < model.epochs.size(); ++i) {
        const TrainedEpoch& e = model.epochs[i];
        out << "epoch " << i + 1 << " label_size " << e.record.label_size << " terminal_round "
            << e.record.terminal_round << " perfect " << (e.record.perfect ? 1 : 0) << " rounds "
            << e.record.rounds.size() << " elimination_count " << e.step.count << '\n';
        for (const auto& rr : e.record.rounds) {
            out << "round " << hex_double(rr.alpha) << ' ' << hex_double(rr.epsilon) << ' ' << hex_double(rr.z)
                << ' ';
            write_stump(out, rr.hypothesis.params);
            out << '\n';
        }
        if (e.record.perfect) {
            out << "perfect_hypothesis ";
            write_stump(out, e.record.perfect_hypothesis->params);
            out << '\n';
        }
        out << "targets ";
        write_labels(out, e.targets);
        out << '\n';
        for (std::size_t p = 0; p < model.num_observations(); ++p) {
            out << "obs ";
            write_labels(out, e.step.candidates[p]);
            out << ' ';
            write_labels(out, e.step.eliminated[p]);
            out << ' ';
            write_labels(out, e.step.permutation[p]);
            out << '\n';
        }
        out << "end_epoch\n";
    }
    out << "predictions ";
    write_labels(out, model.training_predictions);
    out << "\ntruth_lost " << model.truth_lost.size();
    for (std::size_t p : model.truth_lost) out << ' ' << p + 1;
    out << "\nend\n";
}

void write_model(std::ostream& out, const SammeModel& model) {
    write_header(out, model.algorithm.c_str());
    out << "num_labels " << model.num_labels << "\ndim " << model.dim << "\nrounds " << model.rounds.size()
        << '\n';
    for (const auto& w : model.rounds) {
        out << "round " << hex_double(w.alpha) << ' ' << hex_double(w.epsilon) << ' ' << hex_double(w.z) << ' ';
        write_stump(out, w.hypothesis.params);
        out << "\nrealized ";
        write_labels(out, w.hypothesis.realized);
        out << '\n';
    }
    out << "perfect " << (model.perfect ? 1 : 0) << '\n';
    if (model.perfect) {
        out << "perfect_hypothesis ";
        write_stump(out, model.perfect->params);
        out << "\nrealized ";
        write_labels(out, model.perfect->realized);
        out << '\n';
    }
    out << "end\n";
}

AnyModel read_model(std::istream& in) {
    Reader r(in);
    r.next();
    r.expect("iwboost-model");
    r.end_line();
    const std::size_t version = r.keyed_count("format_version");
    if (version != static_cast<std::size_t>(kModelFormatVersion))
        r.fail("unsupported model format version " + std::to_string(version));
    r.next();
    r.expect("algorithm");
    const std::string algorithm = r.word();
    r.end_line();
    if (algorithm == "tau-ks") return read_tau(r);
    if (algorithm == "samme" || algorithm == "adaboost") return read_samme(r, algorithm);
    r.fail("unknown algorithm '" + algorithm + "'");
}

void save_model(const std::string& path, const AnyModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ContractViolation("cannot open '" + path + "' for writing");
    std::visit([&out](const auto& m) { write_model(out, m); }, model);
    if (!out) throw ContractViolation("failed writing '" + path + "'");
}

AnyModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContractViolation("cannot open model file '" + path + "'");
    return read_model(in);
}

Label predict(const AnyModel& model, std::span<const double> x) {
    return std::visit([x](const auto& m) { return predict(m, x); }, model);
}

std::size_t model_dim(const AnyModel& model) {
    return std::visit([](const auto& m) { return m.dim; }, model);
}

std::size_t model_num_labels(const AnyModel& model) {
    return std::visit([](const auto& m) { return m.num_labels; }, model);
}

}  // namespace iwboost
