#include "ocrtune/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ocrtune/errors.hpp"
#include "ocrtune/pgm.hpp"
#include "ocrtune/text.hpp"

namespace ocrtune {
namespace {

constexpr std::array<std::pair<Typology, std::string_view>, 6> kTypologyNames = {{
    {Typology::Letter, "letter"},
    {Typology::ProcessCover, "process-cover"},
    {Typology::StructuredReport, "structured-report"},
    {Typology::TheatrePlayCover, "theatre-play-cover"},
    {Typology::NonStructuredReport, "non-structured-report"},
    {Typology::Other, "other"},
}};

constexpr int kMinimumPerTypology = 60;

// Vocabulary of the synthetic corpus; every character is in the glyph font.
constexpr std::array<std::string_view, 64> kWords = {
    "RELATÓRIO", "CENSURA",   "PROCESSO",    "TEATRO",     "LIVRO",     "DIRECÇÃO",
    "SERVIÇOS",  "INFORMAÇÃO", "CARTA",      "LISBOA",     "PEÇA",      "COMISSÃO",
    "EXAME",     "AUTOR",     "EDITORA",     "PUBLICAÇÃO", "PROIBIDO",  "APROVADO",
    "NÚMERO",    "DATA",      "ASSUNTO",     "DESPACHO",   "SECRETARIADO", "NACIONAL",
    "REVISTA",   "JORNAL",    "ARTIGO",      "OFÍCIO",     "SENHOR",    "DIRECTOR",
    "GERAL",     "CÓPIA",     "ANEXO",       "VISTO",      "CORTES",    "PÁGINA",
    "ACTO",      "CENA",      "ESPECTÁCULO", "PÚBLICO",    "N.º",       "1958",
    "1962",      "3089",      "P.I.D.E.",    "S.N.I.",     "CONFIDENCIAL", "URGENTE",
    "ÀS",        "MÃOS",      "CÂMARA",      "PORTO",      "COIMBRA",   "ÉPOCA",
    "ÚLTIMO",    "DECISÃO",   "PÔR",         "EDIÇÕES",    "TRÊS",      "A",
    "DE",        "O",         "E",           "DO",
};

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, '\t')) fields.push_back(field);
    if (!line.empty() && line.back() == '\t') fields.emplace_back();
    return fields;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

// Largest-remainder apportionment of `count` items; ties go to the earlier typology.
std::vector<Typology> apportion(int count, const std::map<Typology, double>& mix) {
    struct Share {
        Typology typology;
        int whole;
        double remainder;
    };
    std::vector<Share> shares;
    int assigned = 0;
    for (const auto& [typology, p] : mix) {
        const double exact = p * count;
        const int whole = static_cast<int>(std::floor(exact));
        shares.push_back({typology, whole, exact - whole});
        assigned += whole;
    }
    std::vector<std::size_t> order(shares.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return shares[a].remainder > shares[b].remainder;
    });
    for (std::size_t k = 0; assigned < count; ++k, ++assigned) ++shares[order[k % order.size()]].whole;

    std::vector<Typology> out;
    for (const auto& s : shares) out.insert(out.end(), static_cast<std::size_t>(s.whole), s.typology);
    return out;
}

std::string compose_text(Rng& rng) {
    std::uniform_int_distribution<int> line_count(3, 4);
    std::uniform_int_distribution<int> words_per_line(3, 5);
    std::uniform_int_distribution<std::size_t> pick(0, kWords.size() - 1);
    std::string text;
    const int lines = line_count(rng);
    for (int l = 0; l < lines; ++l) {
        if (l > 0) text += '\n';
        const int words = words_per_line(rng);
        for (int w = 0; w < words; ++w) {
            if (w > 0) text += ' ';
            text += kWords[pick(rng)];
        }
    }
    return text;
}

std::filesystem::path relative_if_inside(const std::filesystem::path& p, const std::filesystem::path& base) {
    const auto rel = std::filesystem::relative(p, base);
    if (rel.empty() || *rel.begin() == "..") return p;
    return rel;
}

}  // namespace

std::string_view typology_name(Typology t) {
    for (const auto& [typology, name] : kTypologyNames) {
        if (typology == t) return name;
    }
    return "other";
}

Typology typology_from_name(std::string_view name) {
    std::string allowed;
    for (const auto& [typology, n] : kTypologyNames) {
        if (n == name) return typology;
        allowed += (allowed.empty() ? "" : ", ") + std::string(n);
    }
    throw NotFound("unknown typology '" + std::string(name) + "' (allowed: " + allowed + ")");
}

std::vector<Document> load_manifest(const std::filesystem::path& path, bool check_files) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    const auto base = path.parent_path();

    std::vector<Document> docs;
    std::vector<std::string> errors;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const std::string where = path.filename().string() + ":" + std::to_string(line_no) + ": ";
        const auto fields = split_tabs(line);
        if (fields.size() != 5) {
            errors.push_back(where + "expected 5 tab-separated fields, got " + std::to_string(fields.size()));
            continue;
        }
        Document doc;
        doc.id = fields[0];
        doc.image_path = fields[1];
        doc.transcription_path = fields[2];
        doc.series_code = fields[4];
        if (doc.image_path.is_relative()) doc.image_path = base / doc.image_path;
        if (doc.transcription_path.is_relative()) doc.transcription_path = base / doc.transcription_path;

        bool ok = true;
        if (doc.id.empty()) {
            errors.push_back(where + "empty document id");
            ok = false;
        } else if (!seen.insert(doc.id).second) {
            errors.push_back(where + "duplicate document id '" + doc.id + "'");
            ok = false;
        }
        try {
            doc.typology = typology_from_name(fields[3]);
        } catch (const NotFound& e) {
            errors.push_back(where + e.what());
            ok = false;
        }
        if (check_files) {
            for (const auto& p : {doc.image_path, doc.transcription_path}) {
                if (!std::filesystem::exists(p)) {
                    errors.push_back(where + "missing file " + p.string());
                    ok = false;
                }
            }
        }
        if (ok) docs.push_back(std::move(doc));
    }
    if (!errors.empty()) throw ManifestError(std::move(errors));
    return docs;
}

void write_manifest(const std::filesystem::path& path, std::span<const Document> docs) {
    const auto base = std::filesystem::absolute(path).parent_path();
    std::string out;
    for (const auto& d : docs) {
        out += d.id + '\t' + relative_if_inside(std::filesystem::absolute(d.image_path), base).string() +
               '\t' + relative_if_inside(std::filesystem::absolute(d.transcription_path), base).string() +
               '\t' + std::string(typology_name(d.typology)) + '\t' + d.series_code + '\n';
    }
    write_file(path, out);
}

std::vector<Document> sample_by_series(std::span<const Document> docs, Rng& rng) {
    std::map<Typology, std::map<std::string, std::vector<Document>>> groups;
    for (const auto& d : docs) groups[d.typology][d.series_code].push_back(d);

    std::vector<Document> sample;
    for (auto& [typology, series] : groups) {
        std::vector<std::vector<Document>*> pools;
        std::vector<std::size_t> taken;
        std::size_t available = 0, total = 0;
        for (auto& [code, members] : series) {
            std::shuffle(members.begin(), members.end(), rng);
            const std::size_t quota = (members.size() * 5 + 99) / 100;  // ceil(5%)
            pools.push_back(&members);
            taken.push_back(quota);
            total += quota;
            available += members.size();
        }
        const std::size_t target = std::min<std::size_t>(kMinimumPerTypology, available);
        while (total < target) {
            for (std::size_t s = 0; s < pools.size() && total < target; ++s) {
                if (taken[s] < pools[s]->size()) {
                    ++taken[s];
                    ++total;
                }
            }
        }
        for (std::size_t s = 0; s < pools.size(); ++s) {
            sample.insert(sample.end(), pools[s]->begin(),
                          pools[s]->begin() + static_cast<std::ptrdiff_t>(taken[s]));
        }
    }
    return sample;
}

SplitResult split_halves(std::span<const Document> sample, Rng& rng) {
    std::map<Typology, std::vector<Document>> groups;
    for (const auto& d : sample) groups[d.typology].push_back(d);

    SplitResult result;
    for (auto& [typology, members] : groups) {
        std::shuffle(members.begin(), members.end(), rng);
        const std::size_t first = (members.size() + 1) / 2;
        if (members.size() % 2 != 0) {
            result.warnings.push_back("typology " + std::string(typology_name(typology)) + " has " +
                                      std::to_string(members.size()) +
                                      " documents; the parameterization half gets one more");
        }
        result.parameterization.insert(result.parameterization.end(), members.begin(),
                                       members.begin() + static_cast<std::ptrdiff_t>(first));
        result.evaluation.insert(result.evaluation.end(),
                                 members.begin() + static_cast<std::ptrdiff_t>(first), members.end());
    }
    return result;
}

std::vector<Sample> load_samples(std::span<const Document> docs) {
    std::vector<Sample> samples;
    samples.reserve(docs.size());
    for (const auto& d : docs) {
        samples.push_back({d, pgm::read(d.image_path), text::nfc(slurp(d.transcription_path))});
    }
    return samples;
}

std::map<Typology, double> parse_typology_mix(std::string_view text) {
    std::map<Typology, double> mix;
    std::istringstream in{std::string(text)};
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw MalformedInput("expected typology=proportion, got '" + item + "'");
        double p = 0.0;
        try {
            p = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw MalformedInput("bad proportion in '" + item + "'");
        }
        mix[typology_from_name(item.substr(0, eq))] += p;
    }
    return mix;
}

SyntheticCorpus generate_synthetic(int count, const std::map<Typology, double>& typology_mix,
                                   const NoiseProfile& noise, std::uint64_t seed,
                                   const std::filesystem::path& out_dir) {
    if (count < 1) throw InvalidParameter("count must be >= 1");
    if (typology_mix.empty()) throw InvalidParameter("typology mix is empty");
    double sum = 0.0;
    for (const auto& [t, p] : typology_mix) {
        if (p < 0.0) throw InvalidParameter("typology proportions must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidParameter("typology proportions sum to " + std::to_string(sum) + ", expected 1");
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir / "images", ec);
    std::filesystem::create_directories(out_dir / "text", ec);
    if (ec || !std::filesystem::is_directory(out_dir / "images")) {
        throw IoError("cannot create output directory " + out_dir.string());
    }

    Rng layout(derive_seed(seed, {0}));
    auto typologies = apportion(count, typology_mix);
    std::shuffle(typologies.begin(), typologies.end(), layout);

    SyntheticCorpus corpus;
    corpus.manifest = out_dir / "manifest.tsv";
    for (int i = 0; i < count; ++i) {
        std::ostringstream id;
        id << "doc_" << std::setw(4) << std::setfill('0') << (i + 1);
        Rng doc_rng(derive_seed(seed, {1, static_cast<std::uint64_t>(i)}));
        const std::string text = compose_text(doc_rng);
        const Raster image =
            render_synthetic(text, noise, derive_seed(seed, {2, static_cast<std::uint64_t>(i)}));

        Document doc;
        doc.id = id.str();
        doc.image_path = out_dir / "images" / (doc.id + ".pgm");
        doc.transcription_path = out_dir / "text" / (doc.id + ".txt");
        doc.typology = typologies[static_cast<std::size_t>(i)];
        doc.series_code = "SYN/" + std::string(typology_name(doc.typology)) + "/" + std::to_string(i % 3 + 1);
        pgm::write(doc.image_path, image);
        write_file(doc.transcription_path, text);
        corpus.documents.push_back(std::move(doc));
    }
    write_manifest(corpus.manifest, corpus.documents);

    nlohmann::ordered_json provenance;
    provenance["generator"] = "ocrtune synth";
    provenance["seed"] = seed;
    provenance["count"] = count;
    provenance["noise"] = {{"salt_pepper_p", noise.salt_pepper_p},
                           {"contrast_scale", noise.contrast_scale},
                           {"background", noise.background}};
    auto& mix = provenance["typology_mix"];
    mix = nlohmann::ordered_json::object();
    for (const auto& [t, p] : typology_mix) mix[std::string(typology_name(t))] = p;
    write_file(out_dir / "provenance.json", provenance.dump(2) + "\n");
    return corpus;
}

}  // namespace ocrtune
