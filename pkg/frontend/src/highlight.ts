/** Highlight the feature occurrence inside its context sentence using the
 * service-provided span; the client never re-matches text itself. */

export function highlightSentence(
  sentence: string,
  segment: string,
  featureText: string,
): DocumentFragment {
  const fragment = document.createDocumentFragment();
  // The service guarantees the feature occurs in the segment; locate the
  // occurrence inside the sentence via the segment to avoid re-matching
  // heuristics (abbreviations are case-sensitive server-side).
  const segStart = sentence.indexOf(segment);
  // Phrases match case-insensitively server-side, so fall back to a
  // lowercase scan when the exact spelling is absent.
  let inSegment = segment.indexOf(featureText);
  if (inSegment < 0) {
    inSegment = segment.toLowerCase().indexOf(featureText.toLowerCase());
  }
  if (segStart < 0 || inSegment < 0) {
    fragment.append(sentence);
    return fragment;
  }
  const start = segStart + inSegment;
  const end = start + featureText.length;
  fragment.append(sentence.slice(0, start));
  const mark = document.createElement("mark");
  mark.textContent = sentence.slice(start, end);
  fragment.append(mark);
  fragment.append(sentence.slice(end));
  return fragment;
}
