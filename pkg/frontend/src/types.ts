/**
 * API payload types, validated with zod at the fetch boundary.
 *
 * The UI renders exactly what the service sends; nothing here recomputes
 * detection or scoring logic. Field names mirror the JSON verbatim.
 */

import { z } from "zod";

export const FindingType = z.enum(["contradiction", "diversity", "apparent"]);
export type FindingType = z.infer<typeof FindingType>;

export const CurationState = z.enum([
  "pending",
  "accepted",
  "rejected",
  "reclassified",
]);
export type CurationState = z.infer<typeof CurationState>;

export const Verdict = z.enum(["valid", "ner_error", "sre_error", "out_of_scope"]);
export type Verdict = z.infer<typeof Verdict>;

/** [term, character offset] pairs as produced by the cue tagger. */
export const CueHit = z.tuple([z.string(), z.number().int().nonnegative()]);
export type CueHit = z.infer<typeof CueHit>;

export const ClaimDetail = z.object({
  predication_id: z.string(),
  sentence_id: z.string(),
  article_id: z.string(),
  pub_year: z.number().int().nullable(),
  pub_month: z.number().int().nullable(),
  hedged: z.boolean(),
  disagreement_cue: z.string().nullable(),
  pub_date: z.string(),
  sentence_text: z.string().nullable(),
  claim_key: z.string(),
  hedge_hits: z.array(CueHit),
  disagreement_hits: z.array(CueHit),
});
export type ClaimDetail = z.infer<typeof ClaimDetail>;

export const FindingSummary = z.object({
  id: z.string(),
  type: FindingType,
  state: CurationState,
  subject_cui: z.string(),
  subject_name: z.string(),
  object_cui: z.string(),
  object_name: z.string(),
  predicates: z.array(z.string()),
  claim_count: z.number().int(),
  cue: z.string().optional(),
  group: z.string().optional(),
});
export type FindingSummary = z.infer<typeof FindingSummary>;

export const DecisionRecord = z.object({
  schema: z.number().int(),
  decision_id: z.string(),
  finding_id: z.string(),
  verdict: Verdict,
  affected_claims: z.array(z.string()),
  category_label: z.string().nullable(),
  curator: z.string(),
  timestamp: z.string(),
  note: z.string().nullable(),
});
export type DecisionRecord = z.infer<typeof DecisionRecord>;

export const PredicateEvidence = z.object({
  predicate: z.string(),
  claims: z.array(ClaimDetail),
});
export type PredicateEvidence = z.infer<typeof PredicateEvidence>;

/** Everything the detail screen shows for one finding. */
export const FindingView = FindingSummary.extend({
  content_hash: z.string(),
  category_label: z.string().nullable(),
  applied_decisions: z.array(z.string()),
  evidence: z.array(PredicateEvidence),
  decision_history: z.array(DecisionRecord),
});
export type FindingView = z.infer<typeof FindingView>;

export const QueuePage = z.object({
  total: z.number().int(),
  offset: z.number().int(),
  findings: z.array(FindingSummary),
});
export type QueuePage = z.infer<typeof QueuePage>;

export const Stats = z.object({
  findings: z.object({
    total: z.number().int(),
    by_type: z.record(z.string(), z.number().int()),
    by_state: z.record(z.string(), z.number().int()),
  }),
  pending: z.number().int(),
  objects: z.object({
    total: z.number().int(),
    by_status: z.record(z.string(), z.number().int()),
  }),
  decisions: z.number().int(),
});
export type Stats = z.infer<typeof Stats>;

export const ObjectDetail = z.object({
  id: z.string(),
  subject_cui: z.string(),
  subject_name: z.string(),
  predicate: z.string(),
  object_cui: z.string(),
  object_name: z.string(),
  statuses: z.array(z.string()),
  uncertainty_score: z.object({
    numerator: z.number().int(),
    denominator: z.number().int(),
    value: z.number(),
  }),
  claims: z.array(ClaimDetail),
  timeline: z.array(
    z.object({
      year: z.number().int().nullable(),
      claims: z.number().int(),
      uncertain: z.number().int(),
    })
  ),
});
export type ObjectDetail = z.infer<typeof ObjectDetail>;

export const DecisionResponse = z.object({
  decision: DecisionRecord,
  finding: FindingView.nullable(),
});
export type DecisionResponse = z.infer<typeof DecisionResponse>;

export interface QueueFilters {
  type?: FindingType;
  state?: CurationState;
  limit?: number;
  offset?: number;
}

export interface DecisionInput {
  verdict: Verdict;
  affected_claims: string[];
  category_label: string | null;
  note: string | null;
  content_hash: string;
}
