// HTTP front end for the what-if console.

#include <charconv>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "logjudge/service/http.hpp"

int main(int argc, char** argv) {
  using namespace logjudge;
  CLI::App app{"Serve what-if evaluations for one case file"};
  std::string case_path;
  std::string listen = "127.0.0.1:8080";
  std::string static_dir;
  app.add_option("--case", case_path, "Case file (.case)")->required();
  app.add_option("--listen", listen, "HOST:PORT to listen on");
  app.add_option("--static", static_dir, "Directory served at /");
  CLI11_PARSE(app, argc, argv);

  auto colon = listen.rfind(':');
  int port = 0;
  if (colon == std::string::npos ||
      std::from_chars(listen.data() + colon + 1, listen.data() + listen.size(), port).ec != std::errc{}) {
    std::cerr << "logjudge-serve: --listen expects HOST:PORT\n";
    return 2;
  }
  std::string host = listen.substr(0, colon);

  std::shared_ptr<const scenario::CaseFile> cf;
  try {
    cf = std::make_shared<const scenario::CaseFile>(scenario::load_case_file(case_path));
  } catch (const scenario::CaseError& e) {
    for (const auto& err : e.errors()) std::cerr << case_path << ":" << err.describe() << "\n";
    std::cerr << "logjudge-serve: refusing to start\n";
    return 2;
  }

  service::WhatIfService svc(cf);
  httplib::Server server;
  service::install_routes(server, svc);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    std::cerr << "logjudge-serve: cannot mount " << static_dir << "\n";
    return 2;
  }
  std::cerr << "serving case " << cf->case_id << " on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "logjudge-serve: cannot listen on " << listen << "\n";
    return 1;
  }
  return 0;
}
