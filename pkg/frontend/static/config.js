// Deployment configuration, loaded before the app module.
// Leave empty to call the API on the page's own origin; set to an absolute
// URL (no trailing slash) to point the client at a registry elsewhere.
window.RAN_API_BASE = "";
