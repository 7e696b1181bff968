/** Wizard shell: one screen per stage, every change round-trips to the
 * server, and the rendered numbers are always the last response's. */

import { ElicitClient } from "./api.js";
import {
  axisTicks,
  cdfBandChart,
  linePath,
  linearScale,
  innerArea,
  normalDensitySketch,
  overlayChart,
  shadedProportionChart,
  DEFAULT_FRAME,
} from "./charts.js";
import { SessionController, ValidationError, type Stage } from "./controller.js";
import { approx, exact, nearestMinute, percent } from "./format.js";
import { inRobustBand, normalizeTheta, ROBUST_THETA_BAND } from "./validation.js";

const STAGE_TITLES: Record<Stage, string> = {
  context: "1. Session",
  bounds: "2. Plausible bounds",
  "mean-quantiles": "3. Mean quantiles",
  "mean-review": "4. Mean fit review",
  proportion: "5. Interval proportion",
  "variance-review": "6. Variance fit review",
  "final-feedback": "7. Feedback",
  concluded: "8. Concluded",
};

const STAGE_ORDER: Stage[] = [
  "context",
  "bounds",
  "mean-quantiles",
  "mean-review",
  "proportion",
  "variance-review",
  "final-feedback",
  "concluded",
];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  node.append(...children);
  return node;
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

function numberInput(id: string, label: string, value = ""): HTMLElement {
  return el(
    "label",
    { class: "field" },
    label,
    el("input", { id, type: "number", step: "any", value }),
  );
}

function readNumber(root: HTMLElement, id: string): number {
  const input = root.querySelector<HTMLInputElement>(`#${id}`);
  return input && input.value !== "" ? Number(input.value) : NaN;
}

export class App {
  private readonly controller: SessionController;
  private readonly root: HTMLElement;
  private inlineError = "";

  constructor(root: HTMLElement, baseUrl: string) {
    this.root = root;
    this.controller = new SessionController(new ElicitClient(baseUrl));
    this.controller.subscribe(() => this.render());
    this.render();
  }

  private async guard(action: () => Promise<unknown>): Promise<void> {
    this.inlineError = "";
    try {
      await action();
    } catch (error) {
      if (error instanceof ValidationError) {
        this.inlineError = error.message; // no request was sent
      } else if (error instanceof Error) {
        this.inlineError = error.message;
      }
      this.render();
    }
  }

  private render(): void {
    const stage = this.controller.stage;
    this.root.replaceChildren(this.renderNav(stage), this.renderScreen(stage));
  }

  private renderNav(active: Stage): HTMLElement {
    const nav = el("nav", { class: "wizard-nav" });
    const activeIndex = STAGE_ORDER.indexOf(active);
    for (const stage of STAGE_ORDER) {
      const classes = ["step"];
      if (stage === active) classes.push("active");
      if (STAGE_ORDER.indexOf(stage) < activeIndex) classes.push("done");
      nav.append(el("span", { class: classes.join(" ") }, STAGE_TITLES[stage]));
    }
    return nav;
  }

  private errorBox(): HTMLElement {
    const message = this.inlineError || this.controller.lastError?.message || "";
    return el("p", { class: message ? "error" : "error hidden" }, message);
  }

  private renderScreen(stage: Stage): HTMLElement {
    switch (stage) {
      case "context":
        return this.contextScreen();
      case "bounds":
        return this.boundsScreen();
      case "mean-quantiles":
        return this.meanQuantilesScreen();
      case "mean-review":
        return this.meanReviewScreen();
      case "proportion":
        return this.proportionScreen();
      case "variance-review":
        return this.varianceReviewScreen();
      case "final-feedback":
        return this.finalFeedbackScreen();
      case "concluded":
        return this.concludedScreen();
    }
  }

  private contextScreen(): HTMLElement {
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Start a session"),
      el(
        "label",
        { class: "field" },
        "Purpose / quantity of interest",
        el("input", { id: "context-purpose", type: "text" }),
      ),
      el(
        "label",
        { class: "field" },
        "Transform (identity for symmetric populations, log for positive skewed data, logit for proportions)",
        el(
          "select",
          { id: "context-transform" },
          el("option", { value: "identity" }, "identity"),
          el("option", { value: "log" }, "log"),
          el("option", { value: "logit" }, "logit"),
        ),
      ),
      this.errorBox(),
    );
    const start = el("button", {}, "Create session");
    start.addEventListener("click", () =>
      this.guard(() => {
        const purpose = screen.querySelector<HTMLInputElement>("#context-purpose")!.value;
        const transform = screen.querySelector<HTMLSelectElement>("#context-transform")!
          .value as "identity" | "log" | "logit";
        return this.controller.createSession({ purpose }, transform);
      }),
    );
    screen.append(start);
    return screen;
  }

  private boundsScreen(): HTMLElement {
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Plausible bounds"),
      el(
        "p",
        {},
        "State a lower bound L and an upper bound U so that essentially every member of the population falls between them.",
      ),
      numberInput("bounds-lower", "Lower plausible bound L"),
      numberInput("bounds-upper", "Upper plausible bound U"),
      this.errorBox(),
    );
    const submit = el("button", {}, "Record bounds");
    submit.addEventListener("click", () =>
      this.guard(() =>
        this.controller.submitBounds(
          readNumber(screen, "bounds-lower"),
          readNumber(screen, "bounds-upper"),
        ),
      ),
    );
    screen.append(submit);
    return screen;
  }

  private meanQuantilesScreen(): HTMLElement {
    const view = this.controller.view!;
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Quantiles of the population mean"),
      el(
        "p",
        {},
        `Judge the 5th and 95th percentiles of the population mean ` +
          `(values must lie inside ${exact(view.judgements.lower!)} to ${exact(
            view.judgements.upper!,
          )}).`,
      ),
      numberInput("mean-q05", "5th percentile of the mean"),
      numberInput("mean-q95", "95th percentile of the mean"),
      this.errorBox(),
    );
    const submit = el("button", {}, "Fit mean prior");
    submit.addEventListener("click", () =>
      this.guard(() =>
        this.controller.submitMeanQuantiles([
          { alpha: 0.05, value: readNumber(screen, "mean-q05") },
          { alpha: 0.95, value: readNumber(screen, "mean-q95") },
        ]),
      ),
    );
    screen.append(submit);
    return screen;
  }

  private meanReviewScreen(): HTMLElement {
    const view = this.controller.view!;
    const fit = view.fits.location!;
    const summary = this.controller.meanSummary ?? {};
    const rows = Object.entries(fit.params).map(([name, value]) =>
      el("tr", {}, el("td", {}, name), el("td", { class: "mono" }, exact(value))),
    );
    const summaryText = Object.entries(summary)
      .map(([level, value]) => `${percent(Number(level))}: ${nearestMinute(value)}`)
      .join(", ");
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Fitted mean prior"),
      el("table", { class: "params" }, el("tbody", {}, ...rows)),
      el("p", {}, `Feedback percentiles of the fitted prior (nearest unit): ${summaryText}.`),
      this.meanPdfChart(),
      this.errorBox(),
    );
    const accept = el("button", {}, "Looks right, continue");
    accept.addEventListener("click", () => this.controller.acceptMeanFit());
    const revise = el("button", { class: "secondary" }, "Revise quantiles");
    revise.addEventListener("click", () => this.controller.reopenMeanStep());
    screen.append(accept, revise);
    return screen;
  }

  private meanPdfChart(): SVGElement {
    const view = this.controller.view!;
    const fit = view.fits.location!;
    const svg = this.chartSvg();
    if (fit.family !== "normal") return svg;
    const { grid, density } = normalDensitySketch(
      fit.params.mean!,
      fit.params.variance!,
      view.judgements.lower!,
      view.judgements.upper!,
    );
    const area = innerArea(DEFAULT_FRAME);
    const x = linearScale([view.judgements.lower!, view.judgements.upper!], area.x);
    const y = linearScale([0, Math.max(...density)], area.y);
    svg.append(svgEl("path", { d: linePath(grid, density, x, y), class: "line" }));
    for (const value of Object.values(this.controller.meanSummary ?? {})) {
      svg.append(
        svgEl("line", {
          x1: String(x(value)),
          x2: String(x(value)),
          y1: String(area.y[0]),
          y2: String(area.y[1]),
          class: "marker",
        }),
      );
    }
    this.addXAxis(svg, x);
    return svg;
  }

  private proportionScreen(): HTMLElement {
    const view = this.controller.view!;
    const fit = view.fits.location!;
    const median = fit.median;
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Proportion inside the interval"),
      el(
        "p",
        {},
        `Suppose the population mean is known to equal your fitted median, ` +
          `${exact(median)}. Consider the proportion of the population falling in ` +
          `[median, median + c]. Judge its 5th and 95th percentiles (as proportions ` +
          `below 0.5, or percentages below 50).`,
      ),
      numberInput("theta-lo", "5th percentile of the proportion"),
      numberInput("theta-hi", "95th percentile of the proportion"),
      numberInput("theta-width", "Interval width c (leave blank for a third of the distance to U)"),
      el("p", { id: "robust-badge", class: "badge" }, ""),
      this.explainerChart(),
      this.errorBox(),
    );
    const badge = screen.querySelector<HTMLElement>("#robust-badge")!;
    const refreshBadge = () => {
      const lo = normalizeTheta(readNumber(screen, "theta-lo"));
      const hi = normalizeTheta(readNumber(screen, "theta-hi"));
      if (lo === null && hi === null) {
        badge.textContent = "";
        badge.className = "badge";
        return;
      }
      const ok = (lo === null || inRobustBand(lo)) && (hi === null || inRobustBand(hi));
      const [bandLo, bandHi] = ROBUST_THETA_BAND;
      badge.textContent = ok
        ? `Inside the robust band [${bandLo}, ${bandHi}]: the implied spread reacts least to imprecision here.`
        : `Outside the robust band [${bandLo}, ${bandHi}]: small changes to these proportions move the implied spread a lot; consider a larger interval width c.`;
      badge.className = ok ? "badge ok" : "badge warn";
    };
    screen.querySelectorAll("input").forEach((input) =>
      input.addEventListener("input", refreshBadge),
    );
    const submit = el("button", {}, "Fit variance prior");
    submit.addEventListener("click", () =>
      this.guard(() => {
        const width = readNumber(screen, "theta-width");
        return this.controller.submitProportion(
          readNumber(screen, "theta-lo"),
          readNumber(screen, "theta-hi"),
          Number.isNaN(width) ? undefined : width,
        );
      }),
    );
    screen.append(submit);
    return screen;
  }

  private explainerChart(): SVGElement {
    const view = this.controller.view!;
    const fit = view.fits.location!;
    const svg = this.chartSvg();
    if (fit.family !== "normal") return svg;
    const lower = view.judgements.lower!;
    const upper = view.judgements.upper!;
    const median = fit.median;
    const c = (upper - median) / 3; // illustrative default, server recomputes
    const chart = shadedProportionChart(
      fit.params.mean!,
      fit.params.variance!,
      [median, median + c],
      [lower, upper],
    );
    svg.append(svgEl("path", { d: chart.shade, class: "shade" }));
    svg.append(svgEl("path", { d: chart.curve, class: "line" }));
    this.addXAxis(svg, chart.xScale);
    return svg;
  }

  private varianceReviewScreen(): HTMLElement {
    const view = this.controller.view!;
    const fit = view.fits.variance!;
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Fitted variance prior"),
      el(
        "table",
        { class: "params" },
        el(
          "tbody",
          {},
          el("tr", {}, el("td", {}, "family"), el("td", { class: "mono" }, fit.family)),
          el(
            "tr",
            {},
            el("td", {}, "parameters"),
            el("td", { class: "mono" }, `${exact(fit.params[0])}, ${exact(fit.params[1])}`),
          ),
          el(
            "tr",
            {},
            el("td", {}, "implied variance 5th / 95th percentile"),
            el("td", { class: "mono" }, `${exact(fit.sigma2_05)} / ${exact(fit.sigma2_95)}`),
          ),
        ),
      ),
      ...view.warnings.map((w) => el("p", { class: "badge warn" }, w.message)),
      el(
        "p",
        {},
        "The two curves show the population with the variance pinned at its elicited 5th (narrow) and 95th (wide) percentiles.",
      ),
      el("div", { id: "overlay-slot" }),
      this.errorBox(),
    );
    void this.loadOverlays(screen);
    const accept = el("button", {}, "Show final feedback");
    accept.addEventListener("click", () => this.guard(() => this.controller.showFeedback()));
    screen.append(accept);
    return screen;
  }

  private async loadOverlays(screen: HTMLElement): Promise<void> {
    const view = this.controller.view!;
    try {
      const bundle = await this.controller.client.getFeedback(view.id, { k: 2, j: 2 });
      const chart = overlayChart(bundle.overlay_curves);
      const svg = this.chartSvg();
      for (const path of chart.paths) {
        svg.append(
          svgEl("path", {
            d: path.d,
            class: path.label === "sigma2_05" ? "line narrow" : "line wide",
          }),
        );
      }
      this.addXAxis(svg, chart.xScale);
      screen.querySelector("#overlay-slot")?.replaceChildren(svg);
    } catch {
      // overlays are decorative; the review numbers are already rendered
    }
  }

  private finalFeedbackScreen(): HTMLElement {
    const bundle = this.controller.bundle;
    const screen = el("section", { class: "screen" }, el("h2", {}, "Population CDF feedback"));
    if (bundle !== null) {
      const chart = cdfBandChart(bundle);
      const svg = this.chartSvg();
      svg.append(svgEl("path", { d: chart.band, class: "shade" }));
      svg.append(svgEl("path", { d: chart.median, class: "line" }));
      this.addXAxis(svg, chart.xScale);
      screen.append(svg);
      const intervals = Object.entries(bundle.quantile_intervals).map(([alpha, [lo, hi]]) =>
        el(
          "li",
          {},
          `population ${percent(Number(alpha))} quantile: ` +
            `${approx(lo, 1)} to ${approx(hi, 1)} (central ${percent(
              bundle.config.quantile_interval_level,
            )} interval; raw ${exact(lo)} / ${exact(hi)})`,
        ),
      );
      screen.append(el("ul", {}, ...intervals));
    } else {
      screen.append(el("p", {}, "Loading feedback..."));
      void this.guard(() => this.controller.showFeedback());
    }
    screen.append(this.errorBox());
    const reviseBtn = el("button", { class: "secondary" }, "Revise proportions");
    reviseBtn.addEventListener("click", () => {
      const screenEl = this.reviseProportionScreen();
      this.root.replaceChildren(this.renderNav("final-feedback"), screenEl);
    });
    const concludeBtn = el("button", {}, "Expert accepts - conclude");
    concludeBtn.addEventListener("click", () =>
      this.guard(() => this.controller.conclude("expert accepted the fitted population distribution")),
    );
    screen.append(reviseBtn, concludeBtn);
    return screen;
  }

  private reviseProportionScreen(): HTMLElement {
    const view = this.controller.view!;
    const pj = view.judgements.proportion!;
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Revise the proportion judgements"),
      el(
        "p",
        {},
        `Previous judgements: 5th percentile ${exact(pj.theta_lo)}, 95th percentile ` +
          `${exact(pj.theta_hi)}, width ${exact(pj.width)}.`,
      ),
      numberInput("rev-theta-lo", "New 5th percentile", String(pj.theta_lo)),
      numberInput("rev-theta-hi", "New 95th percentile", String(pj.theta_hi)),
      numberInput("rev-width", "Interval width c", String(pj.width)),
      this.errorBox(),
    );
    const submit = el("button", {}, "Refit variance prior");
    submit.addEventListener("click", () =>
      this.guard(() =>
        this.controller.reviseProportion(
          readNumber(screen, "rev-theta-lo"),
          readNumber(screen, "rev-theta-hi"),
          readNumber(screen, "rev-width"),
        ),
      ),
    );
    return screen;
  }

  private concludedScreen(): HTMLElement {
    const screen = el(
      "section",
      { class: "screen" },
      el("h2", {}, "Session concluded"),
      el("p", {}, "The expert accepted the fitted population distribution."),
    );
    const download = el("button", {}, "Download session document");
    download.addEventListener("click", () =>
      this.guard(async () => {
        const doc = await this.controller.exportDocument();
        const blob = new Blob([JSON.stringify(doc, null, 2)], { type: "application/json" });
        const link = el("a", {
          href: URL.createObjectURL(blob),
          download: `session-${doc.id}.json`,
        });
        link.click();
      }),
    );
    screen.append(download);
    return screen;
  }

  private chartSvg(): SVGElement {
    return svgEl("svg", {
      viewBox: `0 0 ${DEFAULT_FRAME.width} ${DEFAULT_FRAME.height}`,
      class: "chart",
    });
  }

  private addXAxis(svg: SVGElement, scale: ReturnType<typeof linearScale>): void {
    const area = innerArea(DEFAULT_FRAME);
    for (const tick of axisTicks(scale)) {
      const label = svgEl("text", {
        x: String(tick.position),
        y: String(area.y[0] + 24),
        class: "tick",
        "text-anchor": "middle",
      });
      label.textContent = approx(tick.value, 1);
      svg.append(label);
    }
  }
}

export function mount(): void {
  const root = document.getElementById("app");
  if (root === null) throw new Error("missing #app element");
  const baseUrl =
    new URLSearchParams(window.location.search).get("server") ?? "http://127.0.0.1:8000";
  new App(root, baseUrl);
}

if (typeof document !== "undefined" && document.getElementById("app") !== null) {
  mount();
}
