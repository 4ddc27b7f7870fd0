"""Tour of the HTTP JSON API without starting a real server.

The same app serves the web viewer; `tetrametrics serve --port 8000`
starts it for real.  Here starlette's TestClient drives it in-process.
"""

from fastapi.testclient import TestClient

from tetrametrics.service import create_app

client = TestClient(create_app(max_n=120))

print("GET /healthz ->", client.get("/healthz").text.strip())

measures = client.get("/api/measures").json()
print(f"GET /api/measures -> {len(measures)} entries; first: {measures[0]['id']}")

field = client.get("/api/field?measure=precision&n=10").json()
nulls = sum(v is None for v in field["values"])
print(f"GET /api/field?measure=precision&n=10 -> {len(field['points'])} points, "
      f"{nulls} null values, gamut {field['gamut']}")

slice_ = client.get("/api/slice?measure=g_mean&n=100&pos_fraction=0.25").json()
print(f"GET /api/slice (g_mean, f=0.25) -> {len(slice_['tpr_steps'])} x "
      f"{len(slice_['tnr_steps'])} raster")

props = client.get("/api/props?measures=accuracy,precision&n=10").json()
for row in props["rows"]:
    verdicts = {k: v["verdict"] for k, v in row.items()
                if isinstance(v, dict)}
    print(f"GET /api/props -> {row['measure']}: {verdicts}")

threshold = client.get(
    "/api/threshold?measure=iba_gmean&param=alpha&property=monotonicity"
    "&lo=0&hi=2&tol=0.005&n=20").json()
print(f"GET /api/threshold -> alpha* = {threshold['estimate']:.4f} at n=20")

bad = client.get("/api/slice?measure=g_mean&n=100&pos_fraction=0.303")
print(f"unrealizable fraction -> HTTP {bad.status_code}, code {bad.json()['code']}: "
      f"{bad.json()['message'][:70]}...")
