/** What every view gets from the shell. */
export function requireSession(ctx) {
    const session = ctx.session();
    if (session === null)
        throw new Error("view requires a session");
    return session;
}
