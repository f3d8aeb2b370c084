// copaint command-line front end.
#include <CLI11.hpp>

#include <iostream>

#include "copaint/service.hpp"

using namespace copaint;

namespace {

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (auto t = detail::trim(item); !t.empty()) out.emplace_back(t);
  return out;
}

Engine loadEngine(const std::string& configPath) {
  return Engine::fromConfig(configPath.empty() ? Config{} : parseConfig(readTextFile(configPath)));
}

Profile loadProfileOrDemo(const std::string& path) {
  if (path.empty()) return demoProfile("cli");
  std::vector<std::string> warnings;
  Profile p = loadProfile(readTextFile(path), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affective co-painting engine"};
  app.require_subcommand(1);
  std::string configPath;
  app.add_option("--config", configPath, "key=value config file");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Analyze a canvas PNG");
  std::string png, symbols, profilePath;
  analyze->add_option("png", png, "canvas PNG")->required();
  analyze->add_option("--symbols", symbols, "declared symbols, comma separated");
  analyze->add_option("--profile", profilePath, "profile JSON");

  // metaphor
  auto* metaphor = app.add_subcommand("metaphor", "Choose a metaphor for an emotion or a canvas");
  std::optional<double> valence, arousal;
  std::string canvasPath;
  metaphor->add_option("--valence", valence)->check(CLI::Range(-1.0, 1.0));
  metaphor->add_option("--arousal", arousal)->check(CLI::Range(-1.0, 1.0));
  metaphor->add_option("--canvas", canvasPath, "derive the target from a canvas PNG instead");
  metaphor->add_option("--symbols", symbols, "declared symbols, comma separated");
  metaphor->add_option("--profile", profilePath, "profile JSON");

  // profile
  auto* profile = app.add_subcommand("profile", "Create, update or inspect a profile");
  profile->require_subcommand(1);
  auto* pInit = profile->add_subcommand("init", "Write a fresh demo profile");
  std::string profileId = "user", outPath, formPath;
  std::vector<std::string> attrs;
  pInit->add_option("--id", profileId);
  pInit->add_option("--attr", attrs, "attribute key=value (applies stereotype rules)");
  pInit->add_option("--out", outPath)->required();
  auto* pDisclose = profile->add_subcommand("disclose", "Ingest a disclosure form into a profile");
  pDisclose->add_option("--profile", profilePath)->required();
  pDisclose->add_option("--form", formPath)->required();
  pDisclose->add_option("--out", outPath, "defaults to overwriting --profile");
  auto* pShow = profile->add_subcommand("show", "Print resolved affect per concept");
  pShow->add_option("--profile", profilePath)->required();

  // sketch
  auto* sketch = app.add_subcommand("sketch", "Sketch a generic image for an emotion");
  std::string emotion, mode = "abstract", svgOut, strokesOut;
  int size = kStudyCanvasSize;
  sketch->add_option("--emotion", emotion)->required();
  sketch->add_option("--mode", mode)->check(CLI::IsMember({"abstract", "rep", "representational"}));
  sketch->add_option("--out", svgOut, "SVG output")->required();
  sketch->add_option("--strokes", strokesOut, "stroke plan JSON output");
  sketch->add_option("--size", size)->check(CLI::Range(8, 2048));

  // repro-study
  auto* repro = app.add_subcommand("repro-study", "Write the eight generic study sketches");
  std::string outDir;
  repro->add_option("--out", outDir)->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port);
  serve->add_option("--host", host);

  CLI11_PARSE(app, argc, argv);

  try {
    const Engine engine = loadEngine(configPath);

    if (*analyze) {
      const Profile p = loadProfileOrDemo(profilePath);
      const TurnAnalysis a = analyzeTurn(loadCanvasFile(png), splitList(symbols), p, engine.config.weights);
      std::cout << toJson(a).dump(2) << "\n";
    } else if (*metaphor) {
      const Profile p = loadProfileOrDemo(profilePath);
      const TurnHistory history(engine.config.historyCapacity);
      MetaphorDecision d;
      if (!canvasPath.empty()) {
        d = decideTurn(loadCanvasFile(canvasPath), splitList(symbols), std::span<const Profile>(&p, 1), engine, history)
                .second;
      } else {
        if (!valence || !arousal) throw InvalidArgument("metaphor needs --valence and --arousal, or --canvas");
        TurnAnalysis a;
        a.inferred = {*valence, *arousal};
        a.category = categoryOf(a.inferred);
        a.declaredSymbols = splitList(symbols);
        d = chooseMetaphor(a, p, engine.lexicon, history, engine.config.metaphorConfig());
      }
      std::cout << toJson(d).dump() << "\n";
    } else if (*pInit) {
      std::map<std::string, std::string> attributes;
      for (const auto& kv : attrs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidArgument("--attr expects key=value");
        attributes[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      writeTextFile(outPath, saveProfile(demoProfile(profileId, attributes)) + "\n");
    } else if (*pDisclose) {
      Profile p = loadProfileOrDemo(profilePath);
      const DisclosureForm form = disclosureFromJson(nlohmann::json::parse(readTextFile(formPath)));
      p = ingestDisclosure(std::move(p), form, nowMillis());
      writeTextFile(outPath.empty() ? profilePath : outPath, saveProfile(p) + "\n");
    } else if (*pShow) {
      const Profile p = loadProfileOrDemo(profilePath);
      std::cout << "profile " << p.id << " (" << p.taxonomy.size() - 1 << " concepts)\n";
      for (const auto& [path, node] : p.taxonomy.nodes()) {
        if (path.empty()) continue;
        std::cout << std::string(2 * (taxpath::depth(path) - 1), ' ') << taxpath::leafName(path);
        if (auto r = tryEffectiveAffect(p, path))
          std::cout << " " << detail::fmtVA(r->affect) << " [" << toString(r->provenance) << "]";
        if (isTaboo(p, path)) std::cout << " taboo";
        std::cout << "\n";
      }
      for (Element e : kElements)
        if (auto it = p.elementOverrides.find(e); it != p.elementOverrides.end())
          std::cout << "element " << toString(e) << " " << detail::fmtVA(it->second.affect) << " ["
                    << toString(it->second.layer) << "]\n";
    } else if (*sketch) {
      const EmotionCategory e = categoryFromString(emotion);
      const MetaphorMode m = mode == "abstract" ? MetaphorMode::abstract : MetaphorMode::representational;
      const MetaphorDecision d = genericDecision(e, m, engine);
      std::string note;
      const VectorComposition comp = sketchFor(d, demoProfile("generic"), engine, size, size, engine.config.seed, &note);
      writeTextFile(svgOut, toSvg(comp));
      if (!strokesOut.empty()) {
        const StrokePlan plan = planStrokes(rasterize(comp), Raster(size, size), engine.config.strokeBudget);
        writeTextFile(strokesOut, toJson(plan).dump(2) + "\n");
      }
      std::cout << toJson(d).dump(2) << "\n" << note << "\n";
    } else if (*repro) {
      for (const auto& f : writeStudyArtifacts(reproduceStudyArtifacts(engine), outDir)) std::cout << f << "\n";
    } else if (*serve) {
      Service service(engine);
      httplib::Server server;
      service.registerRoutes(server);
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) throw InvalidArgument("cannot listen on " + host + ":" + std::to_string(port));
    }
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
