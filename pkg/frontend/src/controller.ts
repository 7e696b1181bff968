/** Staged-session logic, DOM-free so it can be driven headlessly.
 *
 * The controller performs no numerics: it validates input shape for
 * instant inline errors, forwards everything to the service, and keeps the
 * last server response as the single source of rendered truth. Optimistic
 * updates are deliberately absent - every state change round-trips.
 */

import { ApiError, ElicitClient } from "./api.js";
import type {
  FeedbackBundle,
  MeanSummary,
  QuantilePair,
  SessionDocument,
  SessionState,
  SessionView,
  TransformTag,
} from "./types.js";
import {
  validateBounds,
  validateMeanQuantiles,
  validateProportions,
  validateWidth,
} from "./validation.js";

/** Raised before any request is sent; the field names the offending input. */
export class ValidationError extends Error {
  constructor(readonly field: string, message: string) {
    super(message);
    this.name = "ValidationError";
  }
}

export type Stage =
  | "context"
  | "bounds"
  | "mean-quantiles"
  | "mean-review"
  | "proportion"
  | "variance-review"
  | "final-feedback"
  | "concluded";

const STAGE_BY_STATE: Record<SessionState, Stage> = {
  Created: "bounds",
  BoundsSet: "mean-quantiles",
  MeanElicited: "mean-quantiles",
  MeanFitted: "mean-review",
  ProportionElicited: "proportion",
  VarianceFitted: "variance-review",
  FeedbackShown: "final-feedback",
  Concluded: "concluded",
};

type Listener = () => void;

export class SessionController {
  view: SessionView | null = null;
  meanSummary: Record<string, number> | null = null;
  bundle: FeedbackBundle | null = null;
  lastError: { field: string; message: string } | null = null;
  /** set after the facilitator approves the mean fit on the review screen */
  private meanAccepted = false;
  private listeners: Listener[] = [];

  constructor(readonly client: ElicitClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  get stage(): Stage {
    if (this.view === null) return "context";
    const stage = STAGE_BY_STATE[this.view.state];
    if (stage === "mean-review" && this.meanAccepted) return "proportion";
    return stage;
  }

  private fail(field: string, message: string): never {
    this.lastError = { field, message };
    this.notify();
    throw new ValidationError(field, message);
  }

  private async run<T>(field: string, action: () => Promise<T>): Promise<T> {
    this.lastError = null;
    try {
      const result = await action();
      this.notify();
      return result;
    } catch (error) {
      if (error instanceof ApiError) {
        this.lastError = { field, message: `${error.message} (${error.code})` };
        this.notify();
      }
      throw error;
    }
  }

  async createSession(
    context: Record<string, string>,
    transform: TransformTag,
  ): Promise<SessionView> {
    return this.run("context", async () => {
      this.view = await this.client.createSession(context, transform);
      this.meanAccepted = false;
      this.meanSummary = null;
      this.bundle = null;
      return this.view;
    });
  }

  private requireView(): SessionView {
    if (this.view === null) throw new Error("no active session");
    return this.view;
  }

  async submitBounds(lower: number, upper: number): Promise<SessionView> {
    const view = this.requireView();
    const problem = validateBounds(lower, upper, view.transform);
    if (problem !== null) this.fail("bounds", problem);
    return this.run("bounds", async () => {
      this.view = await this.client.submitBounds(view.id, lower, upper);
      return this.view;
    });
  }

  async submitMeanQuantiles(quantiles: QuantilePair[], family?: string): Promise<SessionView> {
    const view = this.requireView();
    const problem = validateMeanQuantiles(
      quantiles,
      view.judgements.lower ?? -Infinity,
      view.judgements.upper ?? Infinity,
    );
    if (problem !== null) this.fail("mean-quantiles", problem);
    return this.run("mean-quantiles", async () => {
      const revising = this.view!.fits.location !== null;
      this.view = revising
        ? await this.client.reviseMean(view.id, quantiles, family)
        : await this.client.submitMeanQuantiles(view.id, quantiles, family);
      this.meanAccepted = false;
      this.meanSummary = (await this.client.meanSummary(view.id)).mean_summary;
      return this.view;
    });
  }

  /** Facilitator accepts the mean fit and moves on to the variance step. */
  acceptMeanFit(): void {
    this.requireView();
    this.meanAccepted = true;
    this.notify();
  }

  /** Back to the mean screen for new quantiles (fit stays until resubmission). */
  reopenMeanStep(): void {
    this.meanAccepted = false;
    this.notify();
  }

  async submitProportion(
    thetaLo: number,
    thetaHi: number,
    width?: number,
  ): Promise<SessionView> {
    const view = this.requireView();
    const problem = validateProportions(thetaLo, thetaHi) ?? validateWidth(width);
    if (problem !== null) this.fail("proportion", problem);
    return this.run("proportion", async () => {
      const revising = this.view!.fits.variance !== null;
      this.view = revising
        ? await this.client.reviseProportion(view.id, thetaLo, thetaHi, width)
        : await this.client.submitProportion(view.id, thetaLo, thetaHi, width);
      this.bundle = null;
      return this.view;
    });
  }

  /** Fetch the Monte Carlo bundle and record that it was shown. */
  async showFeedback(alphas = "0.05,0.95", intervalLevel = 0.9): Promise<FeedbackBundle> {
    const view = this.requireView();
    return this.run("feedback", async () => {
      this.bundle = await this.client.getFeedback(view.id, {
        alphas,
        interval_level: intervalLevel,
      });
      this.view = await this.client.markFeedbackShown(view.id, {
        quantiles: alphas.split(",").map(Number),
        interval_level: intervalLevel,
      });
      return this.bundle;
    });
  }

  async reviseProportion(
    thetaLo: number,
    thetaHi: number,
    width?: number,
  ): Promise<SessionView> {
    const view = this.requireView();
    const problem = validateProportions(thetaLo, thetaHi) ?? validateWidth(width);
    if (problem !== null) this.fail("proportion", problem);
    return this.run("proportion", async () => {
      this.view = await this.client.reviseProportion(view.id, thetaLo, thetaHi, width);
      this.bundle = null;
      return this.view;
    });
  }

  async conclude(note: string): Promise<SessionView> {
    const view = this.requireView();
    return this.run("conclude", async () => {
      this.view = await this.client.conclude(view.id, note);
      return this.view;
    });
  }

  async exportDocument(): Promise<SessionDocument> {
    const view = this.requireView();
    return this.client.exportSession(view.id);
  }
}

export type { MeanSummary };
