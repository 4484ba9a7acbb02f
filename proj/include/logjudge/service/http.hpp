#pragma once

#include <string>

#include "httplib.h"
#include "logjudge/service/whatif_service.hpp"

namespace logjudge::service {

/// Sends every request on `server` to `svc`. Static files mounted on the
/// server are looked up first. `svc` must outlive the server.
inline void install_routes(httplib::Server& server, const WhatIfService& svc) {
  auto handler = [&svc](const httplib::Request& req, httplib::Response& res) {
    Response r = svc.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  const std::string any = ".*";
  server.Get(any, handler);
  server.Post(any, handler);
  server.Put(any, handler);
  server.Patch(any, handler);
  server.Delete(any, handler);
}

}  // namespace logjudge::service
