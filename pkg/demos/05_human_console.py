"""Driving a learner through the HTTP session API, as the browser console does.

A scripted "human" answers the pending membership queries from a ground
truth it keeps to itself.  Point a real browser at the frontend (see
frontend/README.md) to play the teacher yourself.

Run with: python3 demos/05_human_console.py
"""

import json
import time
import urllib.request

from ellab.service import session_service

svc = session_service("127.0.0.1:0")
svc.start_background()
host, port = svc.address
base = f"http://{host}:{port}"
print("session service on", base)


def call(method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method)
    if data:
        req.add_header("Content-Type", "application/json")
    with urllib.request.urlopen(req, timeout=10) as resp:
        raw = resp.read()
        return resp.status, json.loads(raw) if raw else None


_, created = call("POST", "/sessions", {
    "framework": "toy-atomic",
    "learner": "toy-mq",
    "signature": {"concepts": ["Cat", "Mammal", "Pet"], "roles": []},
})
sid = created["sessionId"]
print("session:", sid)

# the hidden domain knowledge of our scripted expert
entailed = {("Cat", "Mammal"), ("Cat", "Pet")}

while True:
    status, view = call("GET", f"/sessions/{sid}/pending")
    if status == 204:
        time.sleep(0.05)
        continue
    if view["kind"] == "halted":
        print("learner halted; final hypothesis:")
        print(view["payload"])
        break
    lhs, rhs = view["payload"].removeprefix("ci: ").split(" <= ")
    answer = "yes" if lhs == rhs or (lhs, rhs) in entailed else "no"
    print(f"  [{view['step']:>2}] {view['payload']:28} -> {answer}")
    call("POST", f"/sessions/{sid}/answer", {"answer": answer})

_, transcript = call("GET", f"/sessions/{sid}/transcript")
print("metrics:", transcript["metrics"])
call("DELETE", f"/sessions/{sid}")
svc.shutdown()
