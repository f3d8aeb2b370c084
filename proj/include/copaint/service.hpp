#pragma once

#include <httplib.h>

#include <string>
#include <vector>

#include "session.hpp"

namespace copaint {

inline int httpStatusFor(std::string_view code) {
  if (code == "InvalidTransition") return 409;
  if (code == "UnknownPath") return 404;
  if (code == "SchemaVersionMismatch") return 422;
  if (code == "ParseError" || code == "RangeError" || code == "InvalidArgument" || code == "DecodeError" ||
      code == "UnsupportedFormat" || code == "DimensionMismatch")
    return 400;
  return 500;
}

// HTTP front end. Handlers translate JSON to library calls; every engine
// decision happens in the library.
class Service {
 public:
  explicit Service(Engine engine) : engine_(std::move(engine)), profiles_(engine_.config.profileDir) {}

  const Engine& engine() const { return engine_; }
  ProfileStore& profiles() { return profiles_; }

  void registerRoutes(httplib::Server& server) {
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"status":"ok"})", "application/json");
    });

    server.Post("/sessions", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parseBody(req);
      std::vector<std::string> ids;
      if (body.contains("profileIds")) ids = body.at("profileIds").get<std::vector<std::string>>();
      for (const auto& id : ids) profiles_.get(id);
      const std::string sid = sessions_.create(ids, engine_.config.historyCapacity);
      res.status = 201;
      reply(res, {{"sessionId", sid}, {"state", "HumanTurn"}});
    }));

    server.Put(R"(/sessions/([^/]+)/canvas)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const std::vector<std::uint8_t> bytes(req.body.begin(), req.body.end());
      Raster canvas = loadCanvas(bytes);
      const int w = canvas.width(), h = canvas.height();
      sessions_.with(req.matches[1], [&](Session& s) {
        if (s.state != SessionState::HumanTurn)
          throw InvalidTransition("canvas upload while " + std::string(toString(s.state)));
        s.canvas = std::move(canvas);
        return 0;
      });
      reply(res, {{"width", w}, {"height", h}});
    }));

    server.Post(R"(/sessions/([^/]+)/turn)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parseBody(req);
      std::vector<std::string> symbols;
      if (body.contains("symbols")) symbols = body.at("symbols").get<std::vector<std::string>>();
      const nlohmann::json out = sessions_.with(req.matches[1], [&](Session& s) {
        if (!s.canvas) throw InvalidArgument("upload a canvas before ending the turn");
        std::vector<Profile> members;
        for (const auto& id : s.profileIds) members.push_back(profiles_.get(id));
        Session next = advance(s, SessionEvent::endTurn);
        RobotResponse r = runRobotTurn(next, members, engine_, symbols);
        s = std::move(next);
        return toJson(r);
      });
      reply(res, out);
    }));

    server.Post(R"(/sessions/([^/]+)/feedback)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parseBody(req);
      const nlohmann::json out = sessions_.with(req.matches[1], [&](Session& s) {
        if (body.value("skip", false)) {
          s = advance(s, SessionEvent::skip);
          return nlohmann::json{{"state", toString(s.state)}, {"skipped", true}};
        }
        const Feedback fb = Feedback::fromSam(body.at("samValence").get<int>(), body.at("samArousal").get<int>());
        const std::string pid = s.profileIds.front();
        Session next = s;
        profiles_.update(pid, [&](Profile p) { return recordFeedback(next, fb, std::move(p), engine_, nowMillis()); });
        s = std::move(next);
        return nlohmann::json{{"state", toString(s.state)}, {"mapped", toJson(fb.mapped)}, {"profileId", pid}};
      });
      reply(res, out);
    }));

    server.Get(R"(/profiles/([^/]+))", wrap([this](const httplib::Request& req, httplib::Response& res) {
      reply(res, profileToJson(profiles_.get(req.matches[1])));
    }));

    server.Put(R"(/profiles/([^/]+))", wrap([this](const httplib::Request& req, httplib::Response& res) {
      Profile p = profileFromJson(parseBody(req));
      if (p.id != req.matches[1].str()) throw InvalidArgument("profile id does not match the URL");
      profiles_.put(p);
      reply(res, profileToJson(p));
    }));

    server.Post(R"(/profiles/([^/]+)/disclosure)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const DisclosureForm form = disclosureFromJson(parseBody(req));
      const Profile p = profiles_.update(req.matches[1], [&](Profile prof) {
        return ingestDisclosure(std::move(prof), form, nowMillis());
      });
      reply(res, profileToJson(p));
    }));
  }

 private:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  static nlohmann::json parseBody(const httplib::Request& req) {
    if (req.body.empty()) return nlohmann::json::object();
    try {
      return nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(0, e.what());
    }
  }

  static void reply(httplib::Response& res, const nlohmann::json& j) { res.set_content(j.dump(), "application/json"); }

  static Handler wrap(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      auto fail = [&](int status, std::string_view code, const std::string& msg, nlohmann::json extra = {}) {
        res.status = status;
        nlohmann::json j{{"error", code}, {"message", msg}};
        if (!extra.is_null()) j.update(extra);
        reply(res, j);
      };
      try {
        h(req, res);
      } catch (const TurnFailed& e) {
        fail(500, e.code(), e.what(), {{"rationale", e.rationale()}});
      } catch (const Error& e) {
        fail(httpStatusFor(e.code()), e.code(), e.what());
      } catch (const nlohmann::json::exception& e) {
        fail(400, "ParseError", e.what());
      } catch (const std::exception& e) {
        fail(500, "Internal", e.what());
      }
    };
  }

  Engine engine_;
  ProfileStore profiles_;
  SessionManager sessions_;
};

}  // namespace copaint
