import init, { gridView, captureView, boundView } from "./pkg/monolab_wasm.js";

const $ = (id) => document.getElementById(id);

function show(el, f) {
  try {
    el.classList.remove("err");
    return f();
  } catch (e) {
    el.classList.add("err");
    el.textContent = String(e.message ?? e);
    return null;
  }
}

function center(n, size, [x, y]) {
  const cell = size / n;
  return [(x - 0.5) * cell, size - (y - 0.5) * cell];
}

function drawGrid() {
  const n = Number($("g-n").value);
  const info = $("g-info");
  const view = show(info, () => JSON.parse(gridView(n, $("g-eps").value, Number($("g-j").value), Number($("g-k").value))));
  const canvas = $("g-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!view) return;
  const size = canvas.width;
  const cell = size / n;
  const flat = view.values.flat();
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  for (let y = 1; y <= n; y++) {
    for (let x = 1; x <= n; x++) {
      const t = (view.values[y - 1][x - 1] - lo) / (hi - lo || 1);
      const hue = (view.blocks[y - 1][x - 1] * 67) % 360;
      ctx.fillStyle = `hsl(${hue}, 45%, ${90 - 60 * t}%)`;
      ctx.fillRect((x - 1) * cell, size - y * cell, cell, cell);
    }
  }
  ctx.strokeStyle = "#000";
  ctx.lineWidth = 2;
  for (const p of view.cover) {
    const [cx, cy] = center(n, size, p);
    ctx.strokeRect(cx - cell / 2 + 1, cy - cell / 2 + 1, cell - 2, cell - 2);
  }
  ctx.strokeStyle = "#d00";
  ctx.lineWidth = 1.5;
  for (const [a, b] of view.violations) {
    const [ax, ay] = center(n, size, a);
    const [bx, by] = center(n, size, b);
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
    ctx.stroke();
  }
  info.textContent =
    `${view.label}\nm = ${view.m}, m' = ${view.mPrime}, blocks = ${view.blockCount}\n` +
    `violated pairs: ${view.violations.length}\nrepair set: ${view.cover.length} points\n` +
    `distance to monotone: ${view.distance}`;
}

const C_SIDE = 16;
const C_BITS = 8;
const selected = new Set();

// cell (x, y) of [16]^2 maps to the cube point whose low 4 bits encode x - 1
function bitstring(x, y) {
  const v = (x - 1) + (y - 1) * C_SIDE;
  let s = "";
  for (let i = 0; i < C_BITS; i++) s += (v >> i) & 1;
  return s;
}

function drawCapture() {
  const canvas = $("c-canvas");
  const ctx = canvas.getContext("2d");
  const size = canvas.width;
  const cell = size / C_SIDE;
  ctx.clearRect(0, 0, size, size);
  ctx.strokeStyle = "#ccc";
  for (let y = 1; y <= C_SIDE; y++) {
    for (let x = 1; x <= C_SIDE; x++) {
      const key = `${x},${y}`;
      ctx.fillStyle = selected.has(key) ? "#2a6" : "#fff";
      ctx.fillRect((x - 1) * cell, size - y * cell, cell, cell);
      ctx.strokeRect((x - 1) * cell, size - y * cell, cell, cell);
    }
  }
  const info = $("c-info");
  const points = [...selected].map((k) => bitstring(...k.split(",").map(Number))).join("\n");
  const view = show(info, () => JSON.parse(captureView(C_BITS, $("c-eps").value, points)));
  if (!view) return;
  const r = view.report;
  const blocks = r.perBlock.map((b) => `  block ${b.k}: ${b.queriesInBlock} queries, captured {${b.capturedCoords.join(", ")}}`);
  info.textContent =
    `queries: ${r.queryCount}\nm' = ${r.mPrime}, blocks = ${r.blockCount}\n${blocks.join("\n")}\n` +
    `uncaptured perturbations: ${r.indistinguishableCount}\n` +
    `order-identical to the base: ${view.indistinguishableExact.length}\n` +
    `error lower bound: ${r.errorLowerBound}`;
}

function drawBound() {
  const info = $("b-info");
  const b = show(info, () => JSON.parse(boundView(Number($("b-n").value), Number($("b-d").value), $("b-eps").value)));
  if (!b) return;
  info.textContent =
    `m = d log2 n = ${b.m}, m' = ${b.mPrime}\n` +
    `(d log2 n - log2(1/eps)) / (8 eps) = ${b.displayBound}\n` +
    `m' / (8 eps) = ${b.threshold}\n` +
    `difference = ${b.gap}`;
}

await init();
for (const id of ["g-n", "g-eps", "g-j", "g-k"]) $(id).addEventListener("input", drawGrid);
$("c-eps").addEventListener("input", drawCapture);
$("c-clear").addEventListener("click", () => { selected.clear(); drawCapture(); });
$("c-canvas").addEventListener("click", (ev) => {
  const rect = ev.target.getBoundingClientRect();
  const cell = rect.width / C_SIDE;
  const x = Math.floor((ev.clientX - rect.left) / cell) + 1;
  const y = C_SIDE - Math.floor((ev.clientY - rect.top) / cell);
  const key = `${x},${y}`;
  selected.has(key) ? selected.delete(key) : selected.add(key);
  drawCapture();
});
for (const id of ["b-n", "b-d", "b-eps"]) $(id).addEventListener("input", drawBound);
drawGrid();
drawCapture();
drawBound();
