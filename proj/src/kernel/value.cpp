#include "stt/kernel/value.hpp"

namespace stt::kernel {

Env extend(Env env, std::string name, Val value, Val type, int level) {
  auto e = std::make_shared<EnvEntry>();
  e->name = std::move(name);
  e->level = level;
  e->value = std::move(value);
  e->type = std::move(type);
  e->next = std::move(env);
  return e;
}

ClosurePtr closure(Env env, syntax::Pattern pat, syntax::ExprPtr body) {
  auto c = std::make_shared<Closure>();
  c->env = std::move(env);
  c->pattern = std::move(pat);
  c->body = std::move(body);
  return c;
}

ClosurePtr native_closure(std::string binder, std::function<Val(const Val&)> fn) {
  auto c = std::make_shared<Closure>();
  c->pattern = syntax::Pattern::leaf(std::move(binder));
  c->native = std::move(fn);
  return c;
}

ClosurePtr const_closure(Val v) {
  return native_closure("_", [v](const Val&) { return v; });
}

Val mk(VK k, std::vector<Val> vs) {
  auto v = std::make_shared<Value>();
  v->kind = k;
  v->vs = std::move(vs);
  return v;
}

Val mk_pi(Val dom, ClosurePtr cod, ClosurePtr tope) {
  auto v = std::make_shared<Value>();
  v->kind = VK::Pi;
  v->vs = {std::move(dom)};
  v->clo = std::move(cod);
  v->tope = std::move(tope);
  return v;
}

Val mk_sigma(Val dom, ClosurePtr cod) {
  auto v = std::make_shared<Value>();
  v->kind = VK::Sigma;
  v->vs = {std::move(dom)};
  v->clo = std::move(cod);
  return v;
}

Val mk_lambda(ClosurePtr body) {
  auto v = std::make_shared<Value>();
  v->kind = VK::Lambda;
  v->clo = std::move(body);
  return v;
}

Val mk_neutral(Neutral n) {
  auto v = std::make_shared<Value>();
  v->kind = VK::Neutral;
  v->ne = std::make_shared<const Neutral>(std::move(n));
  return v;
}

const GlobalEntry* GlobalEnv::lookup(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : it->second.get();
}

void GlobalEnv::insert(std::shared_ptr<const GlobalEntry> entry) {
  if (!map_.count(entry->name)) order_.push_back(entry->name);
  map_[entry->name] = std::move(entry);
}

void GlobalEnv::erase(const std::string& name) {
  if (!map_.erase(name)) return;
  std::erase(order_, name);
}

const EnvEntry* Ctx::lookup(const std::string& name) const {
  for (const EnvEntry* e = env.get(); e; e = e->next.get())
    if (e->name == name) return e;
  return nullptr;
}

bool Ctx::name_in_use(const std::string& name) const {
  for (const EnvEntry* e = env.get(); e; e = e->next.get()) {
    if (e->name == name) return true;
    if (e->value && e->value->kind == VK::Neutral && !e->value->ne->head.global && e->value->ne->head.name == name)
      return true;
  }
  return globals && globals->contains(name);
}

Ctx Ctx::with_tope(Val phi) const {
  Ctx c = *this;
  c.topes.push_back(std::move(phi));
  return c;
}

}  // namespace stt::kernel
