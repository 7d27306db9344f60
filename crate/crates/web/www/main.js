import init, { ring_info, integrate, verify } from "./pkg/ringlab_web.js";

const zn = (n) => ({ kind: "zn", n });
const PRESETS = [
  ["Z3[X]/(X^3), formal derivative", { kind: "trunc_poly", p: 3, m: 3 }, "formal", "1"],
  ["M2(Z2), inner at E11", { kind: "matrix", base: zn(2), dim: 2 }, "inner:E11", "E12"],
  ["M2(Z3), inner at E11", { kind: "matrix", base: zn(3), dim: 2 }, "inner:E11", "E12"],
  ["Tri(Z2), inner at A", { kind: "tri_pattern", base: zn(2) }, "inner:A", "0"],
  ["Z4, Jordan derivations", zn(4), "enumerate:jordan", "2"],
  ["Z2 x Z3, trivial", { kind: "product", factors: [zn(2), zn(3)] }, "trivial", "(0,0)"],
];

const $ = (id) => document.getElementById(id);
let ring = null;
let highlight = new Set();

function showError(target, err) {
  target.innerHTML = "";
  const div = document.createElement("div");
  div.className = "error";
  div.textContent = String(err.message ?? err);
  target.appendChild(div);
}

function renderTable() {
  const wrap = $("table-wrap");
  wrap.innerHTML = "";
  if (!ring) return;
  const op = $("show-add").checked ? ring.add : ring.mul;
  const sym = $("show-add").checked ? "+" : "·";
  const table = document.createElement("table");
  table.className = "cayley";
  const head = table.insertRow();
  head.appendChild(Object.assign(document.createElement("th"), { textContent: sym }));
  ring.labels.forEach((l, i) => {
    const th = Object.assign(document.createElement("th"), { textContent: l });
    if (highlight.has(i)) th.className = "hit";
    head.appendChild(th);
  });
  op.forEach((row, i) => {
    const tr = table.insertRow();
    const th = Object.assign(document.createElement("th"), { textContent: ring.labels[i] });
    if (highlight.has(i)) th.className = "hit";
    tr.appendChild(th);
    row.forEach((k) => {
      const td = tr.insertCell();
      td.textContent = ring.labels[k];
      if (highlight.has(k)) td.className = "hit";
    });
  });
  wrap.appendChild(table);
}

function loadRing() {
  highlight = new Set();
  $("integral").innerHTML = "";
  $("reports").innerHTML = "";
  try {
    ring = JSON.parse(ring_info($("spec").value));
    const flags = [
      `${ring.size} elements`,
      ring.unity === null ? "no unity" : `unity ${ring.labels[ring.unity]}`,
      ring.commutative ? "commutative" : "noncommutative",
      ring.prime ? "prime" : "not prime",
    ];
    $("props").textContent = `${ring.name}: ${flags.join(", ")}`;
  } catch (err) {
    ring = null;
    showError($("integral"), err);
  }
  renderTable();
}

function runIntegrate() {
  const out = $("integral");
  try {
    const res = JSON.parse(integrate($("spec").value, $("map").value, $("element").value, $("jordan").checked));
    const name = $("jordan").checked ? "j" : "i";
    const x = ring.labels[res.element];
    out.innerHTML = "";
    highlight = new Set();
    for (const r of res.results) {
      const line = document.createElement("div");
      if (r.error) {
        line.textContent = `${r.map}: ${r.error}`;
        line.className = "skipped";
      } else if (r.integral.status === "empty") {
        line.textContent = `${r.map}: ${name}(${x}) = ∅`;
      } else {
        line.textContent = `${r.map}: ${name}(${x}) = {${r.integral.labels.join(", ")}}` +
          `  (${r.integral.size} elements, kernel size ${r.integral.kernel.length})`;
        if (highlight.size === 0) r.integral.elements.forEach((i) => highlight.add(i));
      }
      out.appendChild(line);
    }
  } catch (err) {
    showError(out, err);
  }
  renderTable();
}

function runVerify() {
  const out = $("reports");
  out.textContent = "running…";
  // Let the browser paint before the synchronous checker run.
  setTimeout(() => {
    try {
      const suite = JSON.parse(verify($("spec").value, $("map").value, $("checkers").value));
      const table = document.createElement("table");
      table.className = "reports";
      for (const rep of suite.reports) {
        const tr = table.insertRow();
        tr.insertCell().textContent = rep.checker;
        tr.insertCell().textContent = rep.map;
        const st = tr.insertCell();
        st.textContent = rep.status;
        st.className = rep.status;
        tr.insertCell().textContent = `${rep.instances} instances`;
        const detail = [rep.reason, ...rep.notes,
          ...rep.witnesses.map((w) => `${w.kind}: ${w.statement} [${
            Object.entries(w.values).map(([k, v]) => `${k} = ${v}`).join(", ")}]`)];
        tr.insertCell().textContent = detail.filter(Boolean).join("; ");
      }
      out.innerHTML = `<p>overall: <span class="${suite.status}">${suite.status}</span></p>`;
      out.appendChild(table);
    } catch (err) {
      showError(out, err);
    }
  }, 10);
}

function applyPreset(i) {
  const [, spec, map, element] = PRESETS[i];
  $("spec").value = JSON.stringify(spec);
  $("map").value = map;
  $("element").value = element;
  loadRing();
}

await init();
PRESETS.forEach(([label], i) => $("preset").add(new Option(label, i)));
$("preset").addEventListener("change", (e) => applyPreset(Number(e.target.value)));
$("load").addEventListener("click", loadRing);
$("integrate").addEventListener("click", runIntegrate);
$("verify").addEventListener("click", runVerify);
$("show-add").addEventListener("change", renderTable);
applyPreset(0);
