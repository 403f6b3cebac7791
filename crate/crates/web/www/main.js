// Built with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { render_rgba, heatmap_rgba, check_fiber } from "./pkg/fibertrace_web.js";

const PRESETS = {
  curly: {
    fibers: [{ points: [[0, 0, 0, 0.04], [1.6, -0.4, 0.9, 0.045], [0.6, 2.2, 1.4, 0.04], [2, 2, 2, 0.035]] }],
    camera: { origin: [4.5, -2.5, 1], look_at: [1, 1, 1], up: [-1, -1, 2], fov_deg: 45, width: 256, height: 256 },
  },
  straight: {
    fibers: [{ points: [[0, 0, 0, 0.1], [2, 0, 0, 0.1], [4, 0, 0, 0.1], [6, 0, 0, 0.1]] }],
  },
  loop: {
    fibers: [{ points: [[0, 0, 0, 0.02], [5, 1, 0, 0.02], [-1, 1, 0, 0.02], [4, 0, 0, 0.02]] }],
  },
};

const $ = (id) => document.getElementById(id);
const canvas = $("view");
const ctx = canvas.getContext("2d");

function loadPreset() {
  $("scene").value = JSON.stringify(PRESETS[$("preset").value], null, 2);
}

function show(bytes) {
  const img = new ImageData(new Uint8ClampedArray(bytes), canvas.width, canvas.height);
  ctx.putImageData(img, 0, 0);
}

function timed(label, f) {
  const t0 = performance.now();
  try {
    f();
    $("status").textContent = `${label}: ${(performance.now() - t0).toFixed(0)} ms`;
  } catch (e) {
    $("status").textContent = `error: ${e.message ?? e}`;
  }
}

const params = () => [$("scene").value, $("method").value, Number($("depth").value), canvas.width, canvas.height];

$("render").onclick = () => timed("render", () => show(render_rgba(...params())));
$("heatmap").onclick = () =>
  timed("heatmap", () => show(heatmap_rgba(...params(), Number($("max-count").value))));
$("check").onclick = () => {
  try {
    const scene = JSON.parse($("scene").value);
    const lines = scene.fibers.map((f, i) => `fiber ${i}: ${check_fiber(new Float32Array(f.points.flat()))}`);
    $("status").textContent = lines.join("\n") || "no fibers";
  } catch (e) {
    $("status").textContent = `error: ${e.message ?? e}`;
  }
};
$("preset").onchange = loadPreset;
$("depth").oninput = () => ($("depth-value").textContent = $("depth").value);

await init();
loadPreset();
$("status").textContent = "ready";
